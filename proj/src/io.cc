// Copyright 2026 The cfreview Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cfreview/io.h"

#include <fstream>
#include <set>
#include <sstream>

#include "cfreview/errors.h"
#include "json.hpp"

namespace cfreview {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& what) {
  throw ReviewError(FaultKind::kFormat, "format error: " + what);
}

json Parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(e.what());
  }
}

std::string AsString(const json& j, const char* where) {
  if (!j.is_string()) Fail(std::string(where) + ": expected string");
  return j.get<std::string>();
}

std::vector<std::string> StringList(const json& j, const char* where) {
  if (!j.is_array()) Fail(std::string(where) + ": expected list");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(AsString(e, where));
  return out;
}

std::vector<std::pair<std::string, std::string>> PairList(const json& j,
                                                          const char* where) {
  if (!j.is_array()) Fail(std::string(where) + ": expected list of pairs");
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) {
      Fail(std::string(where) + ": expected 2-element list, got " + e.dump());
    }
    out.emplace_back(AsString(e[0], where), AsString(e[1], where));
  }
  return out;
}

}  // namespace

InstanceData ParseInstanceJson(std::string_view text) {
  const json doc = Parse(text);
  if (!doc.is_object()) Fail("instance must be a JSON object");
  static const std::set<std::string> kKnown = {
      "agents", "papers", "authorship", "qualification", "weights",
      "self_review_forbidden"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKnown.contains(key)) Fail("unknown field \"" + key + "\"");
  }
  for (const char* key : {"agents", "papers", "authorship", "qualification"}) {
    if (!doc.contains(key)) Fail(std::string("missing field \"") + key + "\"");
  }

  InstanceData data;
  data.agents = StringList(doc["agents"], "agents");
  data.papers = StringList(doc["papers"], "papers");
  data.authorship = PairList(doc["authorship"], "authorship");
  data.qualification = PairList(doc["qualification"], "qualification");
  if (doc.contains("self_review_forbidden")) {
    const auto& flag = doc["self_review_forbidden"];
    if (!flag.is_boolean()) Fail("self_review_forbidden: expected boolean");
    data.self_review_forbidden = flag.get<bool>();
  }
  if (doc.contains("weights")) {
    const auto& list = doc["weights"];
    if (!list.is_array()) Fail("weights: expected list");
    data.weights.emplace();
    for (const auto& e : list) {
      if (!e.is_array() || e.size() != 3 || !e[2].is_number_integer()) {
        Fail("weights: expected [agent, paper, integer], got " + e.dump());
      }
      data.weights->push_back({AsString(e[0], "weights"),
                               AsString(e[1], "weights"), e[2].get<Weight>()});
    }
  }
  return data;
}

std::string InstanceToJson(const InstanceData& data) {
  json doc = json::object();
  doc["agents"] = data.agents;
  doc["papers"] = data.papers;
  json authorship = json::array();
  for (const auto& [p, a] : data.authorship) authorship.push_back({p, a});
  doc["authorship"] = std::move(authorship);
  json qualification = json::array();
  for (const auto& [a, p] : data.qualification) qualification.push_back({a, p});
  doc["qualification"] = std::move(qualification);
  if (data.weights) {
    json weights = json::array();
    for (const auto& w : *data.weights) weights.push_back({w.agent, w.paper, w.weight});
    doc["weights"] = std::move(weights);
  }
  doc["self_review_forbidden"] = data.self_review_forbidden;
  return doc.dump(1) + "\n";
}

Assignment ParseAssignmentJson(std::string_view text,
                               const ReviewInstance& instance) {
  const json doc = Parse(text);
  std::vector<ReviewEdge> edges;
  for (const auto& [agent, paper] : PairList(doc, "assignment")) {
    auto a = instance.FindAgent(agent);
    auto p = instance.FindPaper(paper);
    if (!a) Fail("assignment: unknown agent " + agent);
    if (!p) Fail("assignment: unknown paper " + paper);
    edges.push_back({*a, *p});
  }
  return Assignment(std::move(edges));
}

std::string AssignmentToJson(const ReviewInstance& instance,
                             const Assignment& assignment) {
  json doc = json::array();
  for (const auto& e : assignment.edges()) {
    doc.push_back({instance.agent_id(e.agent), instance.paper_id(e.paper)});
  }
  return doc.dump(1) + "\n";
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReviewError(FaultKind::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ReviewError(FaultKind::kIo, "cannot read " + path);
  return buf.str();
}

void WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReviewError(FaultKind::kIo, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ReviewError(FaultKind::kIo, "cannot write " + path);
}

ReviewInstance ReadInstanceFile(const std::string& path) {
  return ReviewInstance::FromData(ParseInstanceJson(ReadTextFile(path)));
}

}  // namespace cfreview

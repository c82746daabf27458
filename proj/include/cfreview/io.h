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

// JSON file formats.
//
// Instance document:
//   {"agents": [...], "papers": [...],
//    "authorship": [[paper, agent], ...],
//    "qualification": [[agent, paper], ...],
//    "weights": [[agent, paper, int], ...],      (optional)
//    "self_review_forbidden": true}              (optional, default true)
// Assignment document: [[agent, paper], ...]
//
// Unknown fields are rejected. Parse errors throw ReviewError(kFormat), file
// errors ReviewError(kIo).

#ifndef CFREVIEW_IO_H_
#define CFREVIEW_IO_H_

#include <string>
#include <string_view>

#include "cfreview/instance.h"

namespace cfreview {

InstanceData ParseInstanceJson(std::string_view text);
std::string InstanceToJson(const InstanceData& data);

// Identifiers are resolved against `instance`; unknown ids are format errors.
// Pairs that are not qualification edges are kept so that validity checks can
// report them.
Assignment ParseAssignmentJson(std::string_view text,
                               const ReviewInstance& instance);
std::string AssignmentToJson(const ReviewInstance& instance,
                             const Assignment& assignment);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

// Read + parse + validate.
ReviewInstance ReadInstanceFile(const std::string& path);

}  // namespace cfreview

#endif  // CFREVIEW_IO_H_

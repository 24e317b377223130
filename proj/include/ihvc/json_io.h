// Copyright 2026 The IHVC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IHVC_JSON_IO_H_
#define IHVC_JSON_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ihvc/body_model.h"
#include "ihvc/bitstream.h"
#include "ihvc/semantics.h"

namespace ihvc {

using Json = nlohmann::json;

// The semantics exchange document:
//   {"width", "height", "fps", "key_full_params": [83], "frames": [[31]...]}
struct SemanticsDocument {
  int width = 0;
  int height = 0;
  double fps = 30.0;
  FullBodyParams key_full_params;
  std::vector<SemanticVector> frames;
};

Json ToJson(const SemanticsDocument& doc);
// Throws Error(kValidation) naming the offending field.
SemanticsDocument SemanticsDocumentFromJson(const Json& j);

SemanticsDocument LoadSemanticsDocument(const std::string& path);
void SaveSemanticsDocument(const std::string& path,
                           const SemanticsDocument& doc);

// {"pose": [[3] x7], "trans": [3], "rot": [3], "loc": [4]}
Json SemanticsToGroupedJson(const SemanticVector& sem);

Json ToJson(const EditCommand& cmd);
EditCommand EditCommandFromJson(const Json& j);

// An edit applied to frames first..last inclusive.
struct ScheduledEdit {
  std::uint32_t first = 0;
  std::uint32_t last = 0;
  EditCommand command;
};

// A JSON list of {"frames": [a, b], "command": {...}}.
std::vector<ScheduledEdit> EditScriptFromJson(const Json& j);

// Applies every edit whose range covers a frame, in script order. Throws
// Error(kValidation) for ranges beyond the sequence.
std::vector<SemanticVector> ApplyEditScript(
    std::span<const SemanticVector> frames,
    std::span<const ScheduledEdit> script);

Json ToJson(const QuantConfig& cfg);

// Skeleton, blend matrices, segments and mesh counts of a template.
Json TemplateToJson(const BodyTemplate& tmpl);

}  // namespace ihvc

#endif  // IHVC_JSON_IO_H_

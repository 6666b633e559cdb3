// Copyright 2026 The ghm Authors
//
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

#ifndef GHM_MODEL_IO_HPP
#define GHM_MODEL_IO_HPP

// Model files: JSON with every floating-point value stored as a hex float
// string ("%a"), so loading reproduces the trained model bit for bit.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ghm/pipeline.hpp"
#include "ghm/preprocess.hpp"

namespace ghm {

inline constexpr int kModelFormatVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct ModelProvenance {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string tool_version = kToolVersion;
};

struct ModelFile {
  AssembleConfig assemble;
  TrainedPipeline pipeline;
  ModelProvenance provenance;
};

std::string encode_model(const ModelFile& m);
ModelFile decode_model(std::string_view text);
void save_model(const std::filesystem::path& path, const ModelFile& m);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace ghm

#endif  // GHM_MODEL_IO_HPP

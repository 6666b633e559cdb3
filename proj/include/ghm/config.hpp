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

#ifndef GHM_CONFIG_HPP
#define GHM_CONFIG_HPP

// Run configuration file (JSON). Every key is optional; unknown keys and
// wrongly typed values are rejected with the line they appear on.
//
// {
//   "seed": 42,
//   "synth": { "sample_rate": 25000, "duration": 1.0, "rotation_hz": 150,
//              "harmonics": [[1, 0.3], [20, 1.0], [40, 0.5]], "noise_sigma": 0.15,
//              "counts": {"OK": 150, "NOK1": 130, "NOK2": 110, "NOK3": 39}, ... },
//   "stft": { "window_len": 512, "frames": 200, "bins": 512, "window": "hamming" },
//   "trim_fraction": 0.4,
//   "mode": "merged",
//   "method": "rumlda", "p": 3, "p_prime": 0, "gamma": 0.01, "max_iter": 20, "tol": 1e-6,
//   "svm": { "c": 10.0, "scale": "median", "tol": 1e-3, "coding": "one_vs_one" },
//   "split": { "train_fraction": 0.8, "folds": 5, "stratified": true },
//   "sweep": { "p_min": 1, "p_max": 10 },
//   "eigenmaps": { "transpose": false }
// }

#include <cstdint>
#include <filesystem>
#include <string>

#include "ghm/evaluation.hpp"
#include "ghm/pipeline.hpp"
#include "ghm/preprocess.hpp"
#include "ghm/synth.hpp"

namespace ghm {

struct RunConfig {
  std::uint64_t seed = 42;
  SynthConfig synth;
  AssembleConfig assemble;
  PipelineConfig pipeline;
  SplitSpec split;
  std::size_t sweep_min = 1;
  std::size_t sweep_max = 10;
  bool transpose_maps = false;

  /// Copies `seed` into the generator and split settings.
  void set_seed(std::uint64_t s);
  void validate() const;
};

RunConfig parse_run_config(const std::string& text, const std::string& source = "config");
RunConfig load_run_config(const std::filesystem::path& path);

/// Canonical JSON with every setting spelled out.
std::string dump_run_config(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

}  // namespace ghm

#endif  // GHM_CONFIG_HPP

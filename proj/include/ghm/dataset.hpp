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

#ifndef GHM_DATASET_HPP
#define GHM_DATASET_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ghm/linalg.hpp"
#include "ghm/preprocess.hpp"

namespace ghm {

/// Gear quality classes; the numeric value is the on-disk label.
enum class QualityClass : std::uint8_t { Ok = 0, Nok1 = 1, Nok2 = 2, Nok3 = 3 };

inline constexpr int kQualityClassCount = 4;

std::string class_name(int label);
int class_from_name(const std::string& name);

/// Sorted distinct labels.
std::vector<int> distinct_labels(std::span<const int> labels);

/// Learner inputs with labels. Each sample is stored in the Tensor3 layout of
/// `shape`; vector and merged samples have a single channel.
struct Dataset {
  InputMode mode = InputMode::Merged;
  SampleShape shape;
  std::vector<Vector> samples;
  std::vector<int> labels;

  std::size_t size() const { return samples.size(); }
  Tensor3 tensor(std::size_t i) const { return Tensor3(shape.dims(), samples[i]); }
  Dataset subset(std::span<const std::size_t> indices) const;

  /// Throws when sample lengths disagree with `shape` or labels are missing.
  void validate() const;
};

}  // namespace ghm

#endif  // GHM_DATASET_HPP

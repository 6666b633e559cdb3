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

#include "ghm/dataset.hpp"

#include <algorithm>

#include "ghm/error.hpp"

namespace ghm {

std::string class_name(int label) {
  switch (label) {
    case 0: return "OK";
    case 1: return "NOK1";
    case 2: return "NOK2";
    case 3: return "NOK3";
    default: return "CLASS" + std::to_string(label);
  }
}

int class_from_name(const std::string& name) {
  for (int c = 0; c < kQualityClassCount; ++c)
    if (class_name(c) == name) return c;
  fail(ErrorKind::Config, "unknown class name '" + name + "'");
}

std::vector<int> distinct_labels(std::span<const int> labels) {
  std::vector<int> out(labels.begin(), labels.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out{mode, shape, {}, {}};
  out.samples.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    require(i < samples.size(), ErrorKind::Dimension, "subset index out of range");
    out.samples.push_back(samples[i]);
    out.labels.push_back(labels[i]);
  }
  return out;
}

void Dataset::validate() const {
  require(samples.size() == labels.size(), ErrorKind::Dimension,
          "dataset has " + std::to_string(samples.size()) + " samples but " +
              std::to_string(labels.size()) + " labels");
  const std::size_t d = shape.size();
  require(d >= 1, ErrorKind::Dimension, "dataset sample shape is empty");
  for (const auto& s : samples)
    require(s.size() == d, ErrorKind::Dimension, "dataset sample length differs from its shape");
}

}  // namespace ghm

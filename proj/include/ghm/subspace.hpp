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

#ifndef GHM_SUBSPACE_HPP
#define GHM_SUBSPACE_HPP

// Uniform front end over the three subspace learners.

#include <cstddef>
#include <span>
#include <string>
#include <variant>

#include "ghm/dataset.hpp"
#include "ghm/lda.hpp"
#include "ghm/pca.hpp"
#include "ghm/umlda.hpp"

namespace ghm {

enum class Method { Pca, PcaLda, Rumlda };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct SubspaceConfig {
  Method method = Method::Rumlda;
  std::size_t p = 3;
  std::size_t p_prime = 0;  // PCA-LDA only; 0 = min(p, c − 1)
  double gamma = 1e-2;      // R-UMLDA only
  std::size_t max_iter = 20;
  double tol = 1e-6;
  PcaSolver solver = PcaSolver::Auto;

  bool operator==(const SubspaceConfig&) const = default;
};

using SubspaceModel = std::variant<PcaModel, FisherModel, UmldaModel>;

Method method_of(const SubspaceModel& m);
std::size_t feature_count(const SubspaceModel& m);

/// Fits on every sample of `train`. Vector learners see the flattened
/// sample; R-UMLDA sees the w × b (× 2) tensor.
SubspaceModel fit_subspace(const Dataset& train, const SubspaceConfig& cfg);

/// Projection of one stored sample (Tensor3 layout of `shape`).
Vector project(const SubspaceModel& m, std::span<const double> sample, const SampleShape& shape);

/// Map p (1-based) scaled onto [0, 255]; w × b for merged inputs.
Matrix display_map(const SubspaceModel& m, std::size_t p);

}  // namespace ghm

#endif  // GHM_SUBSPACE_HPP

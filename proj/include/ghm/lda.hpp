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

#ifndef GHM_LDA_HPP
#define GHM_LDA_HPP

// Two-stage discriminant projector: PCA down to P dimensions, then Fisher LDA
// in the PCA space. The combined projection is Ũ = U_pca·U_lda (D × P′).

#include <cstddef>
#include <span>
#include <vector>

#include "ghm/linalg.hpp"
#include "ghm/pca.hpp"

namespace ghm {

struct FisherModel {
  PcaModel pca;                  // stage 1, P components
  Matrix lda;                    // P′ × P, row k is discriminant direction k in PCA space
  Matrix combined;               // P′ × D, row k is column k of Ũ
  Vector eigenvalues;            // generalized eigenvalues, descending
  std::vector<int> classes;      // sorted labels
  std::vector<Vector> class_means;  // D-space class means, in `classes` order
  double ridge = 0.0;            // ridge added to S_W (0 when S_W was positive definite)

  std::size_t dim() const { return pca.dim(); }
  std::size_t count() const { return eigenvalues.size(); }
};

/// Between- and within-class scatter of feature vectors (within-class uses
/// the class means).
struct ClassScatter {
  Matrix between;
  Matrix within;
};
ClassScatter class_scatter(std::span<const Vector> features, std::span<const int> labels);

/// Full two-stage fit. p_prime = 0 selects min(p, c − 1).
FisherModel fit_pca_lda(std::span<const Vector> data, std::span<const int> labels, std::size_t p,
                        std::size_t p_prime = 0, MapDims dims = {},
                        PcaSolver solver = PcaSolver::Auto);

/// LDA stage on top of an already fitted PCA model.
FisherModel fit_lda_stage(PcaModel pca, std::span<const Vector> data, std::span<const int> labels,
                          std::size_t p_prime = 0);

/// y = Ũᵀ(x − μ).
Vector project_fisher(const FisherModel& m, std::span<const double> x);

/// Column p (1-based) of Ũ reshaped to the map geometry, before display scaling.
Matrix component_map(const FisherModel& m, std::size_t p);
Matrix discriminant_map(const FisherModel& m, std::size_t p);

}  // namespace ghm

#endif  // GHM_LDA_HPP

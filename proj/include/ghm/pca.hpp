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

#ifndef GHM_PCA_HPP
#define GHM_PCA_HPP

// Eigen-map extraction: principal components of the total scatter matrix
// S_T = Σ (x − μ)(x − μ)ᵀ (scatter, not covariance: no 1/(N − 1) factor).

#include <cstddef>
#include <span>

#include "ghm/linalg.hpp"

namespace ghm {

/// Display geometry used to reshape a D-vector into a map; rows·cols = D.
struct MapDims {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool operator==(const MapDims&) const = default;
};

enum class PcaSolver {
  Auto,    // Gram matrix whenever D > N
  Gram,    // eigenvectors of the N × N centered Gram matrix, mapped back
  Direct,  // eigenvectors of the D × D scatter matrix
};

struct PcaModel {
  Vector mean;
  Matrix components;  // P × D, row p is the unit component u_(p+1)
  Vector eigenvalues;  // descending, scatter normalization
  MapDims map_dims;

  std::size_t dim() const { return mean.size(); }
  std::size_t count() const { return eigenvalues.size(); }
  /// The leading p components of this model.
  PcaModel truncated(std::size_t p) const;
};

PcaModel fit_pca(std::span<const Vector> data, std::size_t p, MapDims dims = {},
                 PcaSolver solver = PcaSolver::Auto);

/// y = Uᵀ(x − μ).
Vector project_pca(const PcaModel& m, std::span<const double> x);

/// μ + U·y.
Vector reconstruct(const PcaModel& m, std::span<const double> y);

/// Component p (1-based) reshaped to the map geometry, before display scaling.
Matrix component_map(const PcaModel& m, std::size_t p);

/// Component p (1-based) reshaped and min-max scaled onto [0, 255].
Matrix eigen_map(const PcaModel& m, std::size_t p);

}  // namespace ghm

#endif  // GHM_PCA_HPP

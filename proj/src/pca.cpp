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

#include "ghm/pca.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghm/error.hpp"
#include "ghm/parallel.hpp"
#include "ghm/preprocess.hpp"

namespace ghm {

namespace {

std::vector<Vector> centered(std::span<const Vector> data, const Vector& mean) {
  std::vector<Vector> out(data.size(), Vector(mean.size()));
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t d = 0; d < mean.size(); ++d) out[i][d] = data[i][d] - mean[d];
  return out;
}

void check_component(double lambda, double lambda_max, std::size_t p) {
  require(lambda > 1e-12 * lambda_max && lambda > 0.0, ErrorKind::Numeric,
          "principal component " + std::to_string(p) +
              " has zero variance; reduce the number of components");
}

}  // namespace

PcaModel PcaModel::truncated(std::size_t p) const {
  require(p >= 1 && p <= count(), ErrorKind::Dimension,
          "cannot truncate a " + std::to_string(count()) + "-component model to " +
              std::to_string(p));
  PcaModel out{mean, Matrix(p, dim()), Vector(eigenvalues.begin(), eigenvalues.begin() + static_cast<std::ptrdiff_t>(p)), map_dims};
  for (std::size_t k = 0; k < p; ++k)
    std::copy(components.row(k).begin(), components.row(k).end(), out.components.row(k).begin());
  return out;
}

PcaModel fit_pca(std::span<const Vector> data, std::size_t p, MapDims dims, PcaSolver solver) {
  const std::size_t n = data.size();
  require(n >= 2, ErrorKind::Dimension, "PCA needs at least 2 samples");
  const std::size_t d = data[0].size();
  require(d >= 1, ErrorKind::Dimension, "PCA samples are empty");
  for (const auto& x : data) {
    require(x.size() == d, ErrorKind::Dimension, "PCA samples differ in length");
    require(all_finite(x), ErrorKind::Numeric, "PCA sample has non-finite entries");
  }
  require(p >= 1 && p <= std::min(n - 1, d), ErrorKind::Config,
          "PCA component count must lie in [1, " + std::to_string(std::min(n - 1, d)) +
              "], got " + std::to_string(p));
  if (dims.rows == 0 || dims.cols == 0) dims = {1, d};
  require(dims.rows * dims.cols == d, ErrorKind::Dimension, "map dimensions do not match D");

  Vector mean(d, 0.0);
  for (const auto& x : data)
    for (std::size_t k = 0; k < d; ++k) mean[k] += x[k];
  for (double& v : mean) v /= static_cast<double>(n);
  const auto b = centered(data, mean);

  if (solver == PcaSolver::Auto) solver = d > n ? PcaSolver::Gram : PcaSolver::Direct;

  PcaModel model{mean, Matrix(p, d), Vector(p), dims};
  if (solver == PcaSolver::Gram) {
    Matrix gram(n, n);
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = 0; j <= i; ++j) gram(i, j) = dot(b[i], b[j]);
    });
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) gram(i, j) = gram(j, i);
    const EigenPairs eig = sym_eig(gram);
    for (std::size_t k = 0; k < p; ++k) {
      check_component(eig.values[k], eig.values[0], k + 1);
      Vector u(d, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double vi = eig.vectors(i, k);
        for (std::size_t q = 0; q < d; ++q) u[q] += vi * b[i][q];
      }
      const double len = norm(u);
      for (double& x : u) x /= len;
      fix_sign(u);
      std::copy(u.begin(), u.end(), model.components.row(k).begin());
      model.eigenvalues[k] = eig.values[k];
    }
  } else {
    Matrix scatter(d, d);
    for (const auto& x : b) add_outer(scatter, x);
    const EigenPairs eig = sym_eig(scatter);
    for (std::size_t k = 0; k < p; ++k) {
      check_component(eig.values[k], eig.values[0], k + 1);
      const Vector u = eig.vector(k);
      std::copy(u.begin(), u.end(), model.components.row(k).begin());
      model.eigenvalues[k] = eig.values[k];
    }
  }
  return model;
}

Vector project_pca(const PcaModel& m, std::span<const double> x) {
  require(x.size() == m.dim(), ErrorKind::Dimension,
          "PCA projection expects length " + std::to_string(m.dim()) + ", got " +
              std::to_string(x.size()));
  Vector centered_x(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) centered_x[i] = x[i] - m.mean[i];
  return multiply(m.components, centered_x);
}

Vector reconstruct(const PcaModel& m, std::span<const double> y) {
  require(y.size() == m.count(), ErrorKind::Dimension,
          "reconstruction expects " + std::to_string(m.count()) + " coefficients");
  Vector x = multiply_transposed(m.components, y);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += m.mean[i];
  return x;
}

Matrix component_map(const PcaModel& m, std::size_t p) {
  require(p >= 1 && p <= m.count(), ErrorKind::Dimension,
          "component index " + std::to_string(p) + " out of range");
  return reshape(m.components.row(p - 1), m.map_dims.rows, m.map_dims.cols);
}

Matrix eigen_map(const PcaModel& m, std::size_t p) { return normalize_gray(component_map(m, p)); }

}  // namespace ghm

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

#include "ghm/lda.hpp"

#include <algorithm>
#include <string>

#include "ghm/dataset.hpp"
#include "ghm/error.hpp"
#include "ghm/preprocess.hpp"

namespace ghm {

ClassScatter class_scatter(std::span<const Vector> features, std::span<const int> labels) {
  require(features.size() == labels.size() && !features.empty(), ErrorKind::Dimension,
          "scatter needs one label per feature vector");
  const std::size_t d = features[0].size();
  const auto classes = distinct_labels(labels);

  Vector mean(d, 0.0);
  for (const auto& f : features)
    for (std::size_t k = 0; k < d; ++k) mean[k] += f[k];
  for (double& v : mean) v /= static_cast<double>(features.size());

  ClassScatter out{Matrix(d, d), Matrix(d, d)};
  Vector diff(d);
  for (int c : classes) {
    Vector cm(d, 0.0);
    std::size_t nc = 0;
    for (std::size_t i = 0; i < features.size(); ++i) {
      if (labels[i] != c) continue;
      ++nc;
      for (std::size_t k = 0; k < d; ++k) cm[k] += features[i][k];
    }
    for (double& v : cm) v /= static_cast<double>(nc);
    for (std::size_t k = 0; k < d; ++k) diff[k] = cm[k] - mean[k];
    add_outer(out.between, diff, static_cast<double>(nc));
    for (std::size_t i = 0; i < features.size(); ++i) {
      if (labels[i] != c) continue;
      for (std::size_t k = 0; k < d; ++k) diff[k] = features[i][k] - cm[k];
      add_outer(out.within, diff);
    }
  }
  return out;
}

FisherModel fit_lda_stage(PcaModel pca, std::span<const Vector> data, std::span<const int> labels,
                          std::size_t p_prime) {
  require(data.size() == labels.size(), ErrorKind::Dimension, "one label per sample required");
  const auto classes = distinct_labels(labels);
  const std::size_t c = classes.size();
  const std::size_t n = data.size();
  const std::size_t p = pca.count();
  require(c >= 2, ErrorKind::Config, "LDA needs at least two classes");
  require(p + c <= n, ErrorKind::Config,
          "PCA dimension " + std::to_string(p) + " exceeds N - c = " + std::to_string(n - c) +
              "; the within-class scatter would be singular");
  if (p_prime == 0) p_prime = std::min(p, c - 1);
  require(p_prime >= 1 && p_prime <= std::min(p, c - 1), ErrorKind::Config,
          "discriminant count must lie in [1, " + std::to_string(std::min(p, c - 1)) + "]");

  std::vector<Vector> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = project_pca(pca, data[i]);
  const ClassScatter s = class_scatter(z, labels);

  FisherModel m;
  m.classes = classes;
  EigenPairs eig;
  try {
    eig = gen_sym_eig(s.between, s.within, p_prime);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singularity) throw;
    m.ridge = 1e-8 * trace(s.within) / static_cast<double>(p);
    Matrix ridged = s.within;
    for (std::size_t k = 0; k < p; ++k) ridged(k, k) += m.ridge;
    eig = gen_sym_eig(s.between, ridged, p_prime);
  }

  m.lda = transpose(eig.vectors);
  m.eigenvalues = eig.values;
  m.combined = multiply(m.lda, pca.components);
  const std::size_t d = pca.dim();
  for (int cls : classes) {
    Vector cm(d, 0.0);
    std::size_t nc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i] != cls) continue;
      ++nc;
      for (std::size_t k = 0; k < d; ++k) cm[k] += data[i][k];
    }
    for (double& v : cm) v /= static_cast<double>(nc);
    m.class_means.push_back(std::move(cm));
  }
  m.pca = std::move(pca);
  return m;
}

FisherModel fit_pca_lda(std::span<const Vector> data, std::span<const int> labels, std::size_t p,
                        std::size_t p_prime, MapDims dims, PcaSolver solver) {
  require(data.size() == labels.size(), ErrorKind::Dimension, "one label per sample required");
  const std::size_t c = distinct_labels(labels).size();
  require(c >= 2, ErrorKind::Config, "LDA needs at least two classes");
  require(p + c <= data.size(), ErrorKind::Config,
          "PCA dimension " + std::to_string(p) + " exceeds N - c = " +
              std::to_string(data.size() - std::min(data.size(), c)));
  return fit_lda_stage(fit_pca(data, p, dims, solver), data, labels, p_prime);
}

Vector project_fisher(const FisherModel& m, std::span<const double> x) {
  require(x.size() == m.dim(), ErrorKind::Dimension,
          "Fisher projection expects length " + std::to_string(m.dim()) + ", got " +
              std::to_string(x.size()));
  Vector centered_x(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) centered_x[i] = x[i] - m.pca.mean[i];
  return multiply(m.combined, centered_x);
}

Matrix component_map(const FisherModel& m, std::size_t p) {
  require(p >= 1 && p <= m.count(), ErrorKind::Dimension,
          "discriminant index " + std::to_string(p) + " out of range");
  return reshape(m.combined.row(p - 1), m.pca.map_dims.rows, m.pca.map_dims.cols);
}

Matrix discriminant_map(const FisherModel& m, std::size_t p) {
  return normalize_gray(component_map(m, p));
}

}  // namespace ghm

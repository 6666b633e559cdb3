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

#include "ghm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ghm/dataset.hpp"
#include "ghm/error.hpp"
#include "ghm/parallel.hpp"

namespace ghm {

double gaussian_kernel(std::span<const double> a, std::span<const double> b, double scale) {
  require(a.size() == b.size(), ErrorKind::Dimension, "kernel arguments differ in length");
  require(scale > 0.0, ErrorKind::Config, "kernel scale must be positive");
  return std::exp(-squared_distance(a, b) / scale);
}

double median_kernel_scale(std::span<const Vector> xs) {
  std::vector<double> d2;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) d2.push_back(squared_distance(xs[i], xs[j]));
  if (d2.empty()) return 1.0;
  const auto mid = d2.begin() + static_cast<std::ptrdiff_t>(d2.size() / 2);
  std::nth_element(d2.begin(), mid, d2.end());
  double med = *mid;
  if (d2.size() % 2 == 0) {
    med = 0.5 * (med + *std::max_element(d2.begin(), mid));
  }
  return med > 0.0 && std::isfinite(med) ? med : 1.0;
}

namespace {

constexpr double kTau = 1e-12;

}  // namespace

BinarySvm train_binary_svm(std::span<const Vector> xs, std::span<const int> ys,
                           const SvmOptions& options) {
  require(xs.size() == ys.size(), ErrorKind::Dimension, "one label per sample required");
  require(options.c > 0.0, ErrorKind::Config, "box constraint C must be positive");
  require(options.scale > 0.0, ErrorKind::Config, "kernel scale must be positive");
  require(options.tol > 0.0, ErrorKind::Config, "SMO tolerance must be positive");
  bool pos = false;
  bool neg = false;
  for (int y : ys) {
    require(y == 1 || y == -1, ErrorKind::Config, "binary labels must be -1 or +1");
    (y > 0 ? pos : neg) = true;
  }
  require(pos && neg, ErrorKind::Config, "binary SVM needs both classes");
  const std::size_t dim = xs[0].size();
  for (const auto& x : xs) {
    require(x.size() == dim, ErrorKind::Dimension, "feature vectors differ in length");
    require(all_finite(x), ErrorKind::Numeric, "non-finite feature value");
  }

  // Canonical order: the solution then does not depend on the order of the input.
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ys[a] != ys[b]) return ys[a] < ys[b];
    if (xs[a] != xs[b]) return xs[a] < xs[b];
    return a < b;
  });
  std::vector<const Vector*> x(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = &xs[order[i]];
    y[i] = static_cast<double>(ys[order[i]]);
  }

  Matrix q(n, n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j)
      q(i, j) = y[i] * y[j] * gaussian_kernel(*x[i], *x[j], options.scale);
  });

  const double c = options.c;
  Vector alpha(n, 0.0);
  Vector g(n, -1.0);
  const std::size_t max_iter =
      options.max_iter > 0 ? options.max_iter : std::max<std::size_t>(10'000'000, 100 * n);

  auto in_up = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] < 0 && alpha[t] < c) || (y[t] > 0 && alpha[t] > 0);
  };

  BinarySvm svm;
  svm.kernel_scale = options.scale;
  svm.box_c = c;
  svm.converged = false;
  double m_up = 0.0;
  double m_low = 0.0;
  std::size_t iter = 0;
  for (;; ++iter) {
    std::size_t i = n;
    std::size_t j = n;
    m_up = -std::numeric_limits<double>::infinity();
    m_low = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double s = -y[t] * g[t];
      if (in_up(t) && s > m_up) {
        m_up = s;
        i = t;
      }
      if (in_low(t) && s < m_low) {
        m_low = s;
        j = t;
      }
    }
    if (i == n || j == n || m_up - m_low < options.tol) {
      svm.converged = true;
      break;
    }
    if (iter >= max_iter) break;

    const double ai = alpha[i];
    const double aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-g[i] - g[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (g[i] - g[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }
    const double di = alpha[i] - ai;
    const double dj = alpha[j] - aj;
    for (std::size_t t = 0; t < n; ++t) g[t] += q(t, i) * di + q(t, j) * dj;
  }
  svm.iterations = iter;

  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0 && alpha[t] < c) {
      free_sum += -y[t] * g[t];
      ++free_count;
    }
  }
  svm.bias = free_count > 0 ? free_sum / static_cast<double>(free_count)
                            : 0.5 * (m_up + m_low);
  if (!std::isfinite(svm.bias)) svm.bias = 0.0;

  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] <= 0.0) continue;
    svm.support_vectors.push_back(*x[t]);
    svm.weights.push_back(alpha[t] * y[t]);
  }
  return svm;
}

double decision(const BinarySvm& svm, std::span<const double> x) {
  require(svm.support_vectors.empty() || x.size() == svm.dim(), ErrorKind::Dimension,
          "decision expects length " + std::to_string(svm.dim()) + ", got " +
              std::to_string(x.size()));
  double f = svm.bias;
  for (std::size_t j = 0; j < svm.support_vectors.size(); ++j)
    f += svm.weights[j] * gaussian_kernel(svm.support_vectors[j], x, svm.kernel_scale);
  return f;
}

Matrix coding_matrix(Coding coding, std::size_t c) {
  require(c >= 2, ErrorKind::Config, "ECOC needs at least two classes");
  if (coding == Coding::OneVsOne) {
    Matrix m(c, c * (c - 1) / 2);
    std::size_t col = 0;
    for (std::size_t a = 0; a < c; ++a) {
      for (std::size_t b = a + 1; b < c; ++b, ++col) {
        m(a, col) = 1.0;
        m(b, col) = -1.0;
      }
    }
    return m;
  }
  require(c <= 16, ErrorKind::Config, "dense exhaustive coding supports at most 16 classes");
  const std::size_t cols = (std::size_t{1} << (c - 1)) - 1;
  Matrix m(c, cols);
  for (std::size_t mask = 0; mask < cols; ++mask) {
    m(0, mask) = 1.0;
    for (std::size_t k = 1; k < c; ++k) m(k, mask) = (mask >> (k - 1)) & 1U ? 1.0 : -1.0;
  }
  return m;
}

EcocClassifier train_ecoc(std::span<const Vector> features, std::span<const int> labels,
                          const SvmOptions& options, Coding coding) {
  require(features.size() == labels.size(), ErrorKind::Dimension,
          "one label per feature vector required");
  require(!features.empty(), ErrorKind::Config, "ECOC needs training samples");
  EcocClassifier clf;
  clf.classes = distinct_labels(labels);
  require(clf.classes.size() >= 2, ErrorKind::Config, "ECOC needs at least two classes");
  clf.coding = coding_matrix(coding, clf.classes.size());
  clf.dim = features[0].size();

  std::vector<std::size_t> row(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    row[i] = static_cast<std::size_t>(
        std::lower_bound(clf.classes.begin(), clf.classes.end(), labels[i]) - clf.classes.begin());

  const std::size_t cols = clf.coding.cols();
  clf.learners.resize(cols);
  parallel_for(cols, [&](std::size_t l) {
    std::vector<Vector> xs;
    std::vector<int> ys;
    for (std::size_t i = 0; i < features.size(); ++i) {
      const double code = clf.coding(row[i], l);
      if (code == 0.0) continue;
      xs.push_back(features[i]);
      ys.push_back(code > 0 ? 1 : -1);
    }
    clf.learners[l] = train_binary_svm(xs, ys, options);
  });
  return clf;
}

Vector ecoc_scores(const EcocClassifier& clf, std::span<const double> x) {
  require(x.size() == clf.dim, ErrorKind::Dimension,
          "classifier expects " + std::to_string(clf.dim) + " features, got " +
              std::to_string(x.size()));
  Vector s(clf.learners.size());
  for (std::size_t l = 0; l < s.size(); ++l) s[l] = decision(clf.learners[l], x);
  return s;
}

std::size_t decode_hinge(const Matrix& coding, std::span<const double> scores) {
  require(scores.size() == coding.cols(), ErrorKind::Dimension,
          "one score per coding column required");
  std::size_t best = 0;
  double best_loss = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < coding.rows(); ++r) {
    double loss = 0.0;
    std::size_t used = 0;
    for (std::size_t l = 0; l < coding.cols(); ++l) {
      const double code = coding(r, l);
      if (code == 0.0) continue;
      loss += std::max(0.0, 1.0 - code * scores[l]);
      ++used;
    }
    if (used > 0) loss /= static_cast<double>(used);
    if (loss < best_loss) {
      best_loss = loss;
      best = r;
    }
  }
  return best;
}

int predict_ecoc(const EcocClassifier& clf, std::span<const double> x) {
  return clf.classes[decode_hinge(clf.coding, ecoc_scores(clf, x))];
}

}  // namespace ghm

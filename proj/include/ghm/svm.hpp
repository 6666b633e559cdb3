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

#ifndef GHM_SVM_HPP
#define GHM_SVM_HPP

// Soft-margin Gaussian-kernel SVM trained by SMO, and an error-correcting
// output code (ECOC) wrapper for multiclass problems.

#include <cstddef>
#include <span>
#include <vector>

#include "ghm/linalg.hpp"

namespace ghm {

double gaussian_kernel(std::span<const double> a, std::span<const double> b, double scale);

/// Median of the pairwise squared distances; 1 when that is not positive.
double median_kernel_scale(std::span<const Vector> xs);

struct SvmOptions {
  double c = 1.0;
  double scale = 1.0;
  double tol = 1e-3;
  std::size_t max_iter = 0;  // 0 = max(1e7, 100·N)
};

struct BinarySvm {
  std::vector<Vector> support_vectors;
  Vector weights;  // α_j·y_j
  double bias = 0.0;
  double kernel_scale = 1.0;
  double box_c = 1.0;
  bool converged = true;
  std::size_t iterations = 0;

  std::size_t dim() const { return support_vectors.empty() ? 0 : support_vectors[0].size(); }
};

/// ys must hold only −1 and +1, both present.
BinarySvm train_binary_svm(std::span<const Vector> xs, std::span<const int> ys,
                           const SvmOptions& options = {});

/// f(x) = Σ α_j y_j K(x_j, x) + b.
double decision(const BinarySvm& svm, std::span<const double> x);

enum class Coding {
  OneVsOne,
  DenseExhaustive,
};

/// c × L matrix with entries in {−1, 0, +1}. One-vs-one columns follow the
/// pair order (0,1), (0,2), ..., (c−2,c−1) with +1 on the first class.
Matrix coding_matrix(Coding coding, std::size_t c);

struct EcocClassifier {
  Matrix coding;
  std::vector<BinarySvm> learners;
  std::vector<int> classes;
  std::size_t dim = 0;
};

EcocClassifier train_ecoc(std::span<const Vector> features, std::span<const int> labels,
                          const SvmOptions& options = {}, Coding coding = Coding::OneVsOne);

/// One decision score per learner.
Vector ecoc_scores(const EcocClassifier& clf, std::span<const double> x);

/// Row of `coding` with the lowest mean hinge loss over its nonzero entries;
/// ties go to the lower row.
std::size_t decode_hinge(const Matrix& coding, std::span<const double> scores);

int predict_ecoc(const EcocClassifier& clf, std::span<const double> x);

}  // namespace ghm

#endif  // GHM_SVM_HPP

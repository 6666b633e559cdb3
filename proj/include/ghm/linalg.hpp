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

#ifndef GHM_LINALG_HPP
#define GHM_LINALG_HPP

// Dense matrices, third-order tensors and the symmetric eigensolvers the
// subspace learners are built on. Everything here is a pure function of its
// arguments.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ghm {

using Vector = std::vector<double>;

/// Row-major dense matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const double> values);

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const double> x);
/// aᵀ·x without forming the transpose.
Vector multiply_transposed(const Matrix& a, std::span<const double> x);
Matrix add(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, double s);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double squared_distance(std::span<const double> a, std::span<const double> b);
double frobenius_norm(const Matrix& a);
double trace(const Matrix& a);
bool all_finite(std::span<const double> values);

/// Adds s·x·xᵀ to the square matrix a.
void add_outer(Matrix& a, std::span<const double> x, double s = 1.0);

/// Flips v so that its entry of largest magnitude (first one on ties) is positive.
void fix_sign(std::span<double> v);

/// Eigen-decomposition result; eigenvector k is column k of `vectors`.
struct EigenPairs {
  Vector values;
  Matrix vectors;

  std::size_t count() const noexcept { return values.size(); }
  Vector vector(std::size_t k) const { return vectors.column(k); }
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations. Values are sorted
/// descending; each vector is unit norm with its largest-magnitude entry positive.
EigenPairs sym_eig(const Matrix& a);

/// Lower Cholesky factor L with w = L·Lᵀ. Throws ErrorKind::Singularity when w
/// is not numerically positive definite.
Matrix cholesky(const Matrix& w);

/// Leading k pairs of b·u = λ·w·u via Cholesky reduction, with uᵀ·w·u = 1.
EigenPairs gen_sym_eig(const Matrix& b, const Matrix& w, std::size_t k);

/// Third-order tensor; entry (i, j, k) lives at (i·d2 + j)·d3 + k so a tensor
/// with d3 = 1 shares its storage layout with a row-major d1 × d2 matrix.
class Tensor3 {
 public:
  using Dims = std::array<std::size_t, 3>;

  Tensor3() = default;
  explicit Tensor3(Dims dims, double fill = 0.0);
  Tensor3(Dims dims, std::vector<double> values);
  static Tensor3 from_matrix(const Matrix& m);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim(int mode) const { return dims_.at(static_cast<std::size_t>(mode - 1)); }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * dims_[1] + j) * dims_[2] + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * dims_[1] + j) * dims_[2] + k];
  }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  /// The d1 × d2 slice at channel k.
  Matrix slice(std::size_t k) const;

  bool operator==(const Tensor3&) const = default;

 private:
  Dims dims_{0, 0, 0};
  std::vector<double> data_;
};

/// Mode-m unfolding: mode-m fibers become columns; the remaining indices
/// enumerate columns with the lower-numbered mode varying fastest.
Matrix mode_unfold(const Tensor3& t, int mode);
Tensor3 refold(const Matrix& unfolded, int mode, const Tensor3::Dims& dims);

/// t ×_m v: contracts mode m with v. The result keeps the remaining two modes
/// in their original order.
Matrix mode_vec_product(const Tensor3& t, std::span<const double> v, int mode);
/// Matrix (second-order tensor) version; mode 1 contracts rows, mode 2 columns.
Vector mode_vec_product(const Matrix& t, std::span<const double> v, int mode);

}  // namespace ghm

#endif  // GHM_LINALG_HPP

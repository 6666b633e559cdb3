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

#include "ghm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ghm/error.hpp"

namespace ghm {

namespace {

void check_mode(int mode) {
  require(mode >= 1 && mode <= 3, ErrorKind::Dimension,
          "tensor mode must be 1, 2 or 3, got " + std::to_string(mode));
}

std::string shape(const Matrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  require(rows >= 1 && cols >= 1, ErrorKind::Dimension, "matrix dimensions must be >= 1");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
  require(rows >= 1 && cols >= 1, ErrorKind::Dimension, "matrix dimensions must be >= 1");
  require(data_.size() == rows * cols, ErrorKind::Dimension,
          "matrix storage size does not match its dimensions");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  require(rows_ >= 1 && cols_ >= 1, ErrorKind::Dimension, "matrix dimensions must be >= 1");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, ErrorKind::Dimension, "ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::set_column(std::size_t c, std::span<const double> values) {
  require(values.size() == rows_, ErrorKind::Dimension, "column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorKind::Dimension,
          "cannot multiply " + shape(a) + " by " + shape(b));
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto orow = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  require(a.cols() == x.size(), ErrorKind::Dimension,
          "cannot multiply " + shape(a) + " by vector of length " + std::to_string(x.size()));
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x);
  return out;
}

Vector multiply_transposed(const Matrix& a, std::span<const double> x) {
  require(a.rows() == x.size(), ErrorKind::Dimension,
          "cannot multiply transpose of " + shape(a) + " by vector of length " +
              std::to_string(x.size()));
  Vector out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double xi = x[i];
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += xi * r[j];
  }
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::Dimension,
          "cannot add " + shape(a) + " and " + shape(b));
  Matrix out = a;
  auto o = out.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += bv[i];
  return out;
}

Matrix scaled(const Matrix& a, double s) {
  Matrix out = a;
  for (double& v : out.values()) v *= s;
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::Dimension, "dot product length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double squared_distance(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::Dimension, "distance length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double frobenius_norm(const Matrix& a) { return norm(a.values()); }

double trace(const Matrix& a) {
  require(a.is_square(), ErrorKind::Dimension, "trace of non-square " + shape(a));
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

void add_outer(Matrix& a, std::span<const double> x, double s) {
  require(a.rows() == x.size() && a.cols() == x.size(), ErrorKind::Dimension,
          "outer product size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double sxi = s * x[i];
    auto r = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) r[j] += sxi * x[j];
  }
}

void fix_sign(std::span<double> v) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > best_abs) {
      best_abs = std::abs(v[i]);
      best = i;
    }
  }
  if (!v.empty() && v[best] < 0.0)
    for (double& x : v) x = -x;
}

EigenPairs sym_eig(const Matrix& input) {
  require(input.is_square(), ErrorKind::Dimension, "sym_eig needs a square matrix, got " + shape(input));
  require(all_finite(input.values()), ErrorKind::Numeric, "sym_eig input has non-finite entries");
  const std::size_t n = input.rows();

  double max_abs = 0.0;
  for (double v : input.values()) max_abs = std::max(max_abs, std::abs(v));
  const double sym_tol = 1e-9 * std::max(1.0, max_abs);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      require(std::abs(input(i, j) - input(j, i)) <= sym_tol, ErrorKind::Numeric,
              "sym_eig input is not symmetric");
      a(i, j) = 0.5 * (input(i, j) + input(j, i));
    }
  }

  Matrix v = Matrix::identity(n);
  const double scale = frobenius_norm(a);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= std::numeric_limits<double>::min()) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Skip rotations that cannot change the diagonal in floating point.
        if (sweep > 3 && std::abs(app) + 1e3 * std::abs(apq) == std::abs(app) &&
            std::abs(aqq) + 1e3 * std::abs(apq) == std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          const double nkp = c * akp - s * akq;
          const double nkq = s * akp + c * akq;
          a(k, p) = a(p, k) = nkp;
          a(k, q) = a(q, k) = nkq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenPairs out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    Vector col = v.column(order[k]);
    const double len = norm(col);
    for (double& x : col) x /= len;
    fix_sign(col);
    out.vectors.set_column(k, col);
  }
  return out;
}

Matrix cholesky(const Matrix& w) {
  require(w.is_square(), ErrorKind::Dimension, "cholesky needs a square matrix, got " + shape(w));
  require(all_finite(w.values()), ErrorKind::Numeric, "cholesky input has non-finite entries");
  const std::size_t n = w.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(w(i, i)));
  const double floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_diag;

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = w(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > floor)) fail(ErrorKind::Singularity, "matrix is not positive definite");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.5 * (w(i, j) + w(j, i));
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

namespace {

// Solves L·x = b in place for lower-triangular L.
void forward_substitute(const Matrix& l, std::span<double> b) {
  for (std::size_t i = 0; i < l.rows(); ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b[k];
    b[i] = s / l(i, i);
  }
}

// Solves Lᵀ·x = b in place.
void back_substitute_transposed(const Matrix& l, std::span<double> b) {
  const std::size_t n = l.rows();
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * b[k];
    b[ii] = s / l(ii, ii);
  }
}

}  // namespace

EigenPairs gen_sym_eig(const Matrix& b, const Matrix& w, std::size_t k) {
  require(b.is_square() && w.is_square() && b.rows() == w.rows(), ErrorKind::Dimension,
          "gen_sym_eig needs equal square matrices, got " + shape(b) + " and " + shape(w));
  require(k >= 1 && k <= b.rows(), ErrorKind::Dimension,
          "gen_sym_eig: k must lie in [1, " + std::to_string(b.rows()) + "]");
  require(all_finite(b.values()), ErrorKind::Numeric, "gen_sym_eig input has non-finite entries");
  const std::size_t n = b.rows();
  const Matrix l = cholesky(w);

  // c = L⁻¹·b·L⁻ᵀ, built column by column.
  Matrix x(n, n);  // rows of x hold columns of L⁻¹·b
  for (std::size_t j = 0; j < n; ++j) {
    Vector col = b.column(j);
    forward_substitute(l, col);
    for (std::size_t i = 0; i < n; ++i) x(j, i) = col[i];
  }
  // x(j, :) = (L⁻¹ b)(:, j) so x = (L⁻¹ b)ᵀ = b·L⁻ᵀ; apply L⁻¹ to its columns.
  Matrix c(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector col = x.column(j);
    forward_substitute(l, col);
    c.set_column(j, col);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c(i, j) = c(j, i) = 0.5 * (c(i, j) + c(j, i));

  const EigenPairs reduced = sym_eig(c);
  EigenPairs out{Vector(k), Matrix(n, k)};
  for (std::size_t p = 0; p < k; ++p) {
    out.values[p] = reduced.values[p];
    Vector u = reduced.vector(p);
    back_substitute_transposed(l, u);
    fix_sign(u);
    out.vectors.set_column(p, u);
  }
  return out;
}

Tensor3::Tensor3(Dims dims, double fill) : dims_(dims), data_(dims[0] * dims[1] * dims[2], fill) {
  require(dims[0] >= 1 && dims[1] >= 1 && dims[2] >= 1, ErrorKind::Dimension,
          "tensor dimensions must be >= 1");
}

Tensor3::Tensor3(Dims dims, std::vector<double> values) : dims_(dims), data_(std::move(values)) {
  require(dims[0] >= 1 && dims[1] >= 1 && dims[2] >= 1, ErrorKind::Dimension,
          "tensor dimensions must be >= 1");
  require(data_.size() == dims[0] * dims[1] * dims[2], ErrorKind::Dimension,
          "tensor storage size does not match its dimensions");
}

Tensor3 Tensor3::from_matrix(const Matrix& m) {
  return Tensor3({m.rows(), m.cols(), 1},
                 std::vector<double>(m.values().begin(), m.values().end()));
}

Matrix Tensor3::slice(std::size_t k) const {
  require(k < dims_[2], ErrorKind::Dimension, "tensor slice index out of range");
  Matrix m(dims_[0], dims_[1]);
  for (std::size_t i = 0; i < dims_[0]; ++i)
    for (std::size_t j = 0; j < dims_[1]; ++j) m(i, j) = (*this)(i, j, k);
  return m;
}

namespace {

// Maps (i, j, k) to (row, column) of the mode-m unfolding.
std::pair<std::size_t, std::size_t> unfold_index(const Tensor3::Dims& d, int mode, std::size_t i,
                                                 std::size_t j, std::size_t k) {
  switch (mode) {
    case 1: return {i, j + d[1] * k};
    case 2: return {j, i + d[0] * k};
    default: return {k, i + d[0] * j};
  }
}

}  // namespace

Matrix mode_unfold(const Tensor3& t, int mode) {
  check_mode(mode);
  const auto& d = t.dims();
  const std::size_t rows = t.dim(mode);
  Matrix out(rows, t.size() / rows);
  for (std::size_t i = 0; i < d[0]; ++i)
    for (std::size_t j = 0; j < d[1]; ++j)
      for (std::size_t k = 0; k < d[2]; ++k) {
        const auto [r, c] = unfold_index(d, mode, i, j, k);
        out(r, c) = t(i, j, k);
      }
  return out;
}

Tensor3 refold(const Matrix& unfolded, int mode, const Tensor3::Dims& dims) {
  check_mode(mode);
  Tensor3 t(dims);
  require(unfolded.rows() == t.dim(mode) && unfolded.size() == t.size(), ErrorKind::Dimension,
          "unfolded matrix does not match target tensor dimensions");
  for (std::size_t i = 0; i < dims[0]; ++i)
    for (std::size_t j = 0; j < dims[1]; ++j)
      for (std::size_t k = 0; k < dims[2]; ++k) {
        const auto [r, c] = unfold_index(dims, mode, i, j, k);
        t(i, j, k) = unfolded(r, c);
      }
  return t;
}

Matrix mode_vec_product(const Tensor3& t, std::span<const double> v, int mode) {
  check_mode(mode);
  require(v.size() == t.dim(mode), ErrorKind::Dimension,
          "mode-" + std::to_string(mode) + " product needs a vector of length " +
              std::to_string(t.dim(mode)) + ", got " + std::to_string(v.size()));
  const auto& d = t.dims();
  switch (mode) {
    case 1: {
      Matrix out(d[1], d[2]);
      for (std::size_t i = 0; i < d[0]; ++i)
        for (std::size_t j = 0; j < d[1]; ++j)
          for (std::size_t k = 0; k < d[2]; ++k) out(j, k) += v[i] * t(i, j, k);
      return out;
    }
    case 2: {
      Matrix out(d[0], d[2]);
      for (std::size_t i = 0; i < d[0]; ++i)
        for (std::size_t j = 0; j < d[1]; ++j)
          for (std::size_t k = 0; k < d[2]; ++k) out(i, k) += v[j] * t(i, j, k);
      return out;
    }
    default: {
      Matrix out(d[0], d[1]);
      for (std::size_t i = 0; i < d[0]; ++i)
        for (std::size_t j = 0; j < d[1]; ++j)
          for (std::size_t k = 0; k < d[2]; ++k) out(i, j) += v[k] * t(i, j, k);
      return out;
    }
  }
}

Vector mode_vec_product(const Matrix& t, std::span<const double> v, int mode) {
  require(mode == 1 || mode == 2, ErrorKind::Dimension,
          "matrix mode must be 1 or 2, got " + std::to_string(mode));
  return mode == 1 ? multiply_transposed(t, v) : multiply(t, v);
}

}  // namespace ghm

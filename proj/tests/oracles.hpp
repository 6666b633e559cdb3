// Reference computations used by the tests. They share no code with the
// library beyond the Matrix container and are written for clarity, not speed.

#ifndef GHM_TESTS_ORACLES_HPP
#define GHM_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "ghm/linalg.hpp"
#include "ghm/rng.hpp"
#include "ghm/svm.hpp"

namespace oracle {

using ghm::Matrix;
using ghm::Vector;

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline Matrix random_symmetric(ghm::Rng& rng, std::size_t n, double spread = 1.0) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = rng.uniform(-spread, spread);
  return a;
}

inline Matrix random_spd(ghm::Rng& rng, std::size_t n) {
  Matrix g(n, n);
  for (auto& v : g.values()) v = rng.uniform(-1.0, 1.0);
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += g(i, k) * g(j, k);
      w(i, j) = s + (i == j ? 0.5 : 0.0);
    }
  return w;
}

// Householder reduction of a symmetric matrix to tridiagonal form.
struct Tridiagonal {
  Vector diag;
  Vector off;
};

inline Tridiagonal tridiagonalize(Matrix a) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    Vector v(n, 0.0);
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += a(i, k) * a(i, k);
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const double alpha = a(k + 1, k) > 0.0 ? -xnorm : xnorm;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= alpha;
    double vnorm = 0.0;
    for (double x : v) vnorm += x * x;
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (double& x : v) x /= vnorm;
    Matrix h = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= 2.0 * v[i] * v[j];
    a = matmul(matmul(h, a), h);
  }
  Tridiagonal t;
  for (std::size_t i = 0; i < n; ++i) t.diag.push_back(a(i, i));
  for (std::size_t i = 0; i + 1 < n; ++i) t.off.push_back(a(i + 1, i));
  return t;
}

// Number of eigenvalues below x (Sturm sequence of the tridiagonal form).
inline std::size_t count_below(const Tridiagonal& t, double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++count;
  }
  return count;
}

inline std::size_t negative_inertia(const Matrix& a) { return count_below(tridiagonalize(a), 0.0); }

// Eigenvalues by bisection on a counting function cnt(x) = #{λ < x}.
template <typename Count>
Vector bisect_all(std::size_t n, double bound, Count cnt) {
  Vector out;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = n - 1 - k;  // k-th largest is the j-th smallest
    double lo = -bound;
    double hi = bound;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, bound); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (cnt(mid) >= j + 1)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

inline double abs_bound(const Matrix& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return std::sqrt(s) * 1.01 + 1.0;
}

// Descending eigenvalues of a symmetric matrix.
inline Vector eigenvalues(const Matrix& a) {
  const Tridiagonal t = tridiagonalize(a);
  return bisect_all(a.rows(), abs_bound(a), [&](double x) { return count_below(t, x); });
}

// Descending eigenvalues of b·u = λ·w·u: by Sylvester's law, the number of
// eigenvalues below x is the number of negative eigenvalues of b − x·w.
inline Vector generalized_eigenvalues(const Matrix& b, const Matrix& w) {
  const std::size_t n = b.rows();
  const double wmin = eigenvalues(w).back();
  const double bound = abs_bound(b) / wmin;
  return bisect_all(n, bound, [&](double x) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = b(i, j) - x * w(i, j);
    return negative_inertia(m);
  });
}

// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<Vector> solve(Matrix a, Vector rhs) {
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (std::abs(a(piv, c)) < 1e-13) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(c, k), a(piv, k));
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      rhs[r] -= f * rhs[c];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x[k];
    x[i] = s / a(i, i);
  }
  return x;
}

inline Matrix inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    Vector e(n, 0.0);
    e[c] = 1.0;
    const Vector col = *solve(a, e);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

inline double kernel(std::span<const double> a, std::span<const double> b, double scale) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return std::exp(-d / scale);
}

inline double dual_objective(std::span<const Vector> xs, std::span<const int> ys,
                             std::span<const double> alpha, double scale) {
  double lin = 0.0;
  double quad = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lin += alpha[i];
    for (std::size_t j = 0; j < xs.size(); ++j)
      quad += alpha[i] * alpha[j] * ys[i] * ys[j] * kernel(xs[i], xs[j], scale);
  }
  return lin - 0.5 * quad;
}

// Exact maximum of the SVM dual by enumerating every assignment of each
// multiplier to {0, C, free} and solving the stationarity system of the free
// set. Only meant for a handful of points.
inline double svm_dual_max(std::span<const Vector> xs, std::span<const int> ys, double c,
                           double scale) {
  const std::size_t n = xs.size();
  std::size_t states = 1;
  for (std::size_t i = 0; i < n; ++i) states *= 3;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < states; ++s) {
    std::vector<int> kind(n);
    std::size_t code = s;
    for (std::size_t i = 0; i < n; ++i) {
      kind[i] = static_cast<int>(code % 3);  // 0 lower, 1 upper, 2 free
      code /= 3;
    }
    Vector alpha(n, 0.0);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i) {
      if (kind[i] == 1) alpha[i] = c;
      if (kind[i] == 2) free.push_back(i);
    }
    const std::size_t f = free.size();
    if (f > 0) {
      Matrix a(f + 1, f + 1);
      Vector rhs(f + 1, 0.0);
      for (std::size_t r = 0; r < f; ++r) {
        const std::size_t i = free[r];
        double fixed = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          if (kind[j] == 1) fixed += ys[i] * ys[j] * kernel(xs[i], xs[j], scale) * c;
        for (std::size_t q = 0; q < f; ++q) {
          const std::size_t j = free[q];
          a(r, q) = ys[i] * ys[j] * kernel(xs[i], xs[j], scale);
        }
        a(r, f) = ys[i];
        a(f, r) = ys[i];
        rhs[r] = 1.0 - fixed;
      }
      double eq = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (kind[j] == 1) eq += ys[j] * c;
      rhs[f] = -eq;
      const auto sol = solve(a, rhs);
      if (!sol) continue;
      bool ok = true;
      for (std::size_t r = 0; r < f; ++r) {
        if ((*sol)[r] < -1e-12 || (*sol)[r] > c + 1e-12) ok = false;
        alpha[free[r]] = std::clamp((*sol)[r], 0.0, c);
      }
      if (!ok) continue;
    }
    double eq = 0.0;
    for (std::size_t i = 0; i < n; ++i) eq += ys[i] * alpha[i];
    if (std::abs(eq) > 1e-9) continue;
    best = std::max(best, dual_objective(xs, ys, alpha, scale));
  }
  return best;
}

// |DFT bin k| of a window-tapered frame, by direct summation.
inline double dft_magnitude(std::span<const double> frame, std::size_t k) {
  std::complex<double> acc = 0.0;
  const double n = static_cast<double>(frame.size());
  for (std::size_t t = 0; t < frame.size(); ++t)
    acc += frame[t] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * t) / n);
  return std::abs(acc);
}

inline double cosine(std::span<const double> a, std::span<const double> b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

inline double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += (a[i] - ma) * (b[i] - mb);
    aa += (a[i] - ma) * (a[i] - ma);
    bb += (b[i] - mb) * (b[i] - mb);
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

}  // namespace oracle

#endif  // GHM_TESTS_ORACLES_HPP

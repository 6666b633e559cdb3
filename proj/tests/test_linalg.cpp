#include <cmath>

#include "doctest.h"
#include "ghm/error.hpp"
#include "ghm/linalg.hpp"
#include "ghm/rng.hpp"
#include "oracles.hpp"

using namespace ghm;

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("sym_eig on identity and diagonal matrices") {
  const EigenPairs id = sym_eig(Matrix::identity(3));
  for (double v : id.values) CHECK(v == doctest::Approx(1.0));
  const Matrix g = multiply(transpose(id.vectors), id.vectors);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(g(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

  const EigenPairs d = sym_eig(Matrix{{2, 0}, {0, 5}});
  CHECK(d.values[0] == 5.0);
  CHECK(d.values[1] == 2.0);
  CHECK(d.vectors(0, 0) == 0.0);
  CHECK(d.vectors(1, 0) == 1.0);
  CHECK(d.vectors(0, 1) == 1.0);
  CHECK(d.vectors(1, 1) == 0.0);
}

TEST_CASE("sym_eig matches the Sturm bisection oracle") {
  Rng rng(7);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix a = oracle::random_symmetric(rng, n, 3.0);
      const EigenPairs e = sym_eig(a);
      const Vector ref = oracle::eigenvalues(a);
      CHECK(max_abs_diff(e.values, ref) <= 1e-9);
      for (std::size_t k = 0; k < n; ++k) {
        const Vector u = e.vector(k);
        Vector au = multiply(a, u);
        for (std::size_t i = 0; i < n; ++i) au[i] -= e.values[k] * u[i];
        CHECK(norm(au) <= 1e-9);
        CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("sym_eig sign convention and descending order") {
  Rng rng(11);
  const Matrix a = oracle::random_symmetric(rng, 6);
  const EigenPairs e = sym_eig(a);
  for (std::size_t k = 0; k + 1 < e.count(); ++k) CHECK(e.values[k] >= e.values[k + 1]);
  for (std::size_t k = 0; k < e.count(); ++k) {
    Vector u = e.vector(k);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < u.size(); ++i)
      if (std::abs(u[i]) > std::abs(u[arg])) arg = i;
    CHECK(u[arg] > 0.0);
  }
  CHECK(sym_eig(a).vectors == e.vectors);
}

TEST_CASE("sym_eig rejects non-symmetric input") {
  CHECK_THROWS_AS(sym_eig(Matrix{{1, 2}, {0, 1}}), Error);
  CHECK_THROWS_AS(sym_eig(Matrix(2, 3)), Error);
}

TEST_CASE("gen_sym_eig reduces to sym_eig for w = I") {
  Rng rng(3);
  const Matrix b = oracle::random_symmetric(rng, 5);
  const EigenPairs g = gen_sym_eig(b, Matrix::identity(5), 3);
  const EigenPairs s = sym_eig(b);
  REQUIRE(g.count() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(g.values[k] == doctest::Approx(s.values[k]).epsilon(1e-10));
    CHECK(std::abs(oracle::cosine(g.vector(k), s.vector(k))) == doctest::Approx(1.0));
  }
}

TEST_CASE("gen_sym_eig with b proportional to w") {
  Rng rng(5);
  const Matrix w = oracle::random_spd(rng, 4);
  const EigenPairs g = gen_sym_eig(scaled(w, 2.0), w, 4);
  for (double v : g.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("gen_sym_eig agrees with the explicit inverse and inertia oracles") {
  Rng rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix b = oracle::random_symmetric(rng, 3);
    const Matrix w = oracle::random_spd(rng, 3);
    const EigenPairs g = gen_sym_eig(b, w, 3);
    const Vector ref = oracle::generalized_eigenvalues(b, w);
    CHECK(max_abs_diff(g.values, ref) <= 1e-8);
    const Matrix winv_b = oracle::matmul(oracle::inverse(w), b);
    for (std::size_t k = 0; k < 3; ++k) {
      const Vector u = g.vector(k);
      Vector r = multiply(b, u);
      const Vector wu = multiply(w, u);
      for (std::size_t i = 0; i < 3; ++i) r[i] -= g.values[k] * wu[i];
      CHECK(norm(r) <= 1e-8);
      CHECK(dot(u, wu) == doctest::Approx(1.0).epsilon(1e-10));
      Vector m = multiply(winv_b, u);
      for (std::size_t i = 0; i < 3; ++i) m[i] -= g.values[k] * u[i];
      CHECK(norm(m) <= 1e-8 * (1.0 + std::abs(g.values[k])));
    }
  }
}

TEST_CASE("cholesky rejects indefinite matrices") {
  CHECK_THROWS_AS(cholesky(Matrix{{1, 2}, {2, 1}}), Error);
  const Matrix l = cholesky(Matrix{{4, 2}, {2, 3}});
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(0, 1) == 0.0);
  CHECK(l(1, 0) == doctest::Approx(1.0));
  CHECK(l(1, 1) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("mode_unfold enumerates fibers") {
  Tensor3 t({2, 2, 1}, {1, 2, 3, 4});
  CHECK(mode_unfold(t, 1) == Matrix{{1, 2}, {3, 4}});

  Tensor3 u({2, 3, 2});
  double v = 1.0;
  for (auto& x : u.values()) x = v++;
  const Matrix m2 = mode_unfold(u, 2);
  REQUIRE(m2.rows() == 3);
  REQUIRE(m2.cols() == 4);
  // Column index enumerates (i, k) with i fastest.
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(m2(j, i + 2 * k) == u(i, j, k));
  for (int mode = 1; mode <= 3; ++mode) CHECK(refold(mode_unfold(u, mode), mode, u.dims()) == u);
}

TEST_CASE("mode_vec_product matches triple loops") {
  Rng rng(17);
  Tensor3 t({3, 4, 2});
  for (auto& x : t.values()) x = rng.uniform(-1.0, 1.0);
  Vector v1(3), v2(4), v3(2);
  for (auto& x : v1) x = rng.uniform(-1.0, 1.0);
  for (auto& x : v2) x = rng.uniform(-1.0, 1.0);
  for (auto& x : v3) x = rng.uniform(-1.0, 1.0);

  const Matrix p1 = mode_vec_product(t, v1, 1);
  REQUIRE(p1.rows() == 4);
  REQUIRE(p1.cols() == 2);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 2; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < 3; ++i) s += t(i, j, k) * v1[i];
      CHECK(std::abs(p1(j, k) - s) <= 1e-12);
    }
  const Matrix p3 = mode_vec_product(t, v3, 3);
  REQUIRE(p3.rows() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(p3(i, j) - (t(i, j, 0) * v3[0] + t(i, j, 1) * v3[1])) <= 1e-12);

  double full = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 2; ++k) full += t(i, j, k) * v1[i] * v2[j] * v3[k];
  const double a = dot(mode_vec_product(mode_vec_product(t, v1, 1), v2, 1), v3);
  const double b = dot(mode_vec_product(mode_vec_product(t, v3, 3), v2, 2), v1);
  CHECK(std::abs(a - full) <= 1e-12);
  CHECK(std::abs(b - full) <= 1e-12);

  const Vector e1{1.0, 0.0};
  CHECK(mode_vec_product(t, e1, 3) == t.slice(0));
}

TEST_CASE("dimension errors") {
  CHECK_THROWS_AS(multiply(Matrix(2, 3), Matrix(2, 3)), Error);
  Tensor3 t({2, 2, 2});
  CHECK_THROWS_AS(mode_vec_product(t, Vector(3), 1), Error);
  try {
    multiply(Matrix(2, 3), Matrix(2, 3));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Dimension);
  }
}

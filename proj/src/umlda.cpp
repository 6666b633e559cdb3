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

#include "ghm/umlda.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghm/dataset.hpp"
#include "ghm/error.hpp"
#include "ghm/lda.hpp"
#include "ghm/parallel.hpp"
#include "ghm/preprocess.hpp"

namespace ghm {

namespace umlda_detail {

Vector partial_projection(const Tensor3& t, const std::vector<Vector>& modes, int m) {
  const auto& d = t.dims();
  require(modes.size() == 3 && modes[0].size() == d[0] && modes[1].size() == d[1] &&
              modes[2].size() == d[2],
          ErrorKind::Dimension, "mode vectors do not match tensor dims");
  const Vector& u1 = modes[0];
  const Vector& u2 = modes[1];
  const Vector& u3 = modes[2];
  Vector y(d[static_cast<std::size_t>(m - 1)], 0.0);
  for (std::size_t i = 0; i < d[0]; ++i) {
    for (std::size_t j = 0; j < d[1]; ++j) {
      for (std::size_t k = 0; k < d[2]; ++k) {
        const double v = t(i, j, k);
        switch (m) {
          case 1: y[i] += v * u2[j] * u3[k]; break;
          case 2: y[j] += v * u1[i] * u3[k]; break;
          case 3: y[k] += v * u1[i] * u2[j]; break;
          default: fail(ErrorKind::Dimension, "mode must be 1, 2 or 3");
        }
      }
    }
  }
  return y;
}

namespace {

// Orthonormal basis of span(vectors), by modified Gram-Schmidt with one
// reorthogonalization pass.
std::vector<Vector> orthonormal_basis(std::span<const Vector> vectors, double drop_tol) {
  std::vector<Vector> basis;
  for (const Vector& a : vectors) {
    Vector v = a;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& e : basis) {
        const double c = dot(e, v);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * e[k];
      }
    }
    const double n = norm(v);
    if (n <= drop_tol || n == 0.0) continue;
    for (double& x : v) x /= n;
    basis.push_back(std::move(v));
  }
  return basis;
}

// Orthonormal basis of the orthogonal complement of span(range) in R^d.
std::vector<Vector> complement_basis(const std::vector<Vector>& range, std::size_t d) {
  std::vector<Vector> all = range;
  std::vector<Vector> out;
  const std::size_t want = d - std::min(d, range.size());
  for (std::size_t i = 0; i < d && out.size() < want; ++i) {
    Vector v(d, 0.0);
    v[i] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& e : all) {
        const double c = dot(e, v);
        for (std::size_t k = 0; k < d; ++k) v[k] -= c * e[k];
      }
    }
    const double n = norm(v);
    if (n <= 1e-6) continue;
    for (double& x : v) x /= n;
    all.push_back(v);
    out.push_back(std::move(v));
  }
  return out;
}

EigenPairs leading_pair(const Matrix& b, Matrix w) {
  try {
    return gen_sym_eig(b, w, 1);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Singularity) throw;
  }
  const std::size_t r = w.rows();
  const double tr = trace(w);
  if (tr > 0.0) {
    const double rho = 1e-10 * tr / static_cast<double>(r);
    for (std::size_t k = 0; k < r; ++k) w(k, k) += rho;
  } else {
    w = Matrix::identity(r);
  }
  return gen_sym_eig(b, w, 1);
}

}  // namespace

Vector solve_mode_update(const Matrix& between, const Matrix& within, double ridge,
                         std::span<const Vector> constraints, double drop_tol) {
  const std::size_t d = between.rows();
  require(between.is_square() && within.rows() == d && within.cols() == d, ErrorKind::Dimension,
          "scatter matrices must be square and of equal size");
  const auto range = orthonormal_basis(constraints, drop_tol);

  if (range.empty()) {
    Matrix w = within;
    for (std::size_t k = 0; k < d; ++k) w(k, k) += ridge;
    Vector u = leading_pair(between, w).vector(0);
    const double n = norm(u);
    for (double& x : u) x /= n;
    fix_sign(u);
    return u;
  }

  const auto q = complement_basis(range, d);
  require(!q.empty(), ErrorKind::Numeric,
          "decorrelation constraints leave no feasible direction in a mode of size " +
              std::to_string(d));
  const std::size_t r = q.size();
  Matrix qm(d, r);
  for (std::size_t c = 0; c < r; ++c) qm.set_column(c, q[c]);
  const Matrix qt = transpose(qm);
  Matrix br = multiply(qt, multiply(between, qm));
  Matrix wr = multiply(qt, multiply(within, qm));
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      br(a, b) = br(b, a) = 0.5 * (br(a, b) + br(b, a));
      wr(a, b) = wr(b, a) = 0.5 * (wr(a, b) + wr(b, a));
    }
    wr(a, a) += ridge;
  }
  const Vector z = leading_pair(br, wr).vector(0);
  Vector u = multiply(qm, z);
  const double n = norm(u);
  for (double& x : u) x /= n;
  fix_sign(u);
  return u;
}

}  // namespace umlda_detail

namespace {

using umlda_detail::partial_projection;

Tensor3 centered(const Tensor3& t, const Tensor3& mean) {
  Tensor3 out = t;
  auto v = out.values();
  auto m = mean.values();
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= m[k];
  return out;
}

std::vector<Vector> padded_modes(const Emp& e) {
  std::vector<Vector> modes = e.modes;
  if (modes.size() == 2) modes.push_back(Vector{1.0});
  return modes;
}

double ratio(const Matrix& sb, const Matrix& sw, double ridge, const Vector& u) {
  const double b = dot(u, multiply(sb, u));
  const double w = dot(u, multiply(sw, u)) + ridge;
  return w > 0.0 ? b / w : 0.0;
}

}  // namespace

double contract_emp(const Tensor3& t, const Emp& e) {
  const auto modes = padded_modes(e);
  return dot(partial_projection(t, modes, 1), modes[0]);
}

UmldaModel fit_rumlda(std::span<const Tensor3> data, std::span<const int> labels,
                      const UmldaOptions& options) {
  require(data.size() == labels.size(), ErrorKind::Dimension, "one label per sample required");
  require(!data.empty(), ErrorKind::Config, "R-UMLDA needs training samples");
  const auto dims = data[0].dims();
  for (const auto& t : data) {
    require(t.dims() == dims, ErrorKind::Dimension, "all tensors must share dims");
    require(all_finite(t.values()), ErrorKind::Numeric, "non-finite tensor entry");
  }
  const auto classes = distinct_labels(labels);
  require(classes.size() >= 2, ErrorKind::Config,
          "degenerate labels: R-UMLDA needs at least two classes");
  require(options.gamma >= 0.0 && std::isfinite(options.gamma), ErrorKind::Config,
          "gamma must be finite and non-negative");
  require(options.max_iter >= 1, ErrorKind::Config, "max_iter must be at least 1");
  require(options.tol >= 0.0, ErrorKind::Config, "tol must be non-negative");
  const std::size_t p_max = std::min(dims[0], dims[1]);
  require(options.p >= 1 && options.p <= p_max, ErrorKind::Config,
          "feature count must lie in [1, " + std::to_string(p_max) + "]");

  const std::size_t n = data.size();
  UmldaModel model;
  model.order = dims[2] == 1 ? 2 : 3;
  model.dims = dims;
  model.gamma = options.gamma;

  model.mean = Tensor3(dims);
  for (const auto& t : data) {
    auto dst = model.mean.values();
    auto src = t.values();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  }
  for (double& v : model.mean.values()) v /= static_cast<double>(n);
  std::vector<Tensor3> xc(n);
  for (std::size_t i = 0; i < n; ++i) xc[i] = centered(data[i], model.mean);

  const int order = model.order;
  std::vector<Vector> history;  // decorrelated training features, one vector per EMP
  model.deflation = Matrix(options.p, options.p);
  model.training_features = Matrix(n, options.p);

  for (std::size_t p = 0; p < options.p; ++p) {
    std::vector<Vector> modes(3);
    for (int m = 0; m < 3; ++m) {
      const std::size_t dm = dims[static_cast<std::size_t>(m)];
      modes[static_cast<std::size_t>(m)] = Vector(dm, 1.0 / std::sqrt(static_cast<double>(dm)));
    }

    std::vector<Vector> normalized_prev;
    for (const Vector& h : history) {
      const double hn = norm(h);
      Vector hh = h;
      if (hn > 0.0)
        for (double& x : hh) x /= hn;
      normalized_prev.push_back(std::move(hh));
    }

    std::vector<Vector> y(n);
    auto project_all = [&](int m) {
      parallel_for(n, [&](std::size_t i) { y[i] = partial_projection(xc[i], modes, m); });
    };

    EmpDiagnostics diag;
    diag.feasible_from = p == 0 ? 0 : 1;
    project_all(1);
    diag.ridge = options.gamma * trace(class_scatter(y, labels).within) /
                 static_cast<double>(dims[0]);

    double previous = 0.0;
    for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
      for (int m = 1; m <= order; ++m) {
        project_all(m);
        const ClassScatter s = class_scatter(y, labels);
        const std::size_t dm = dims[static_cast<std::size_t>(m - 1)];
        std::vector<Vector> constraints;
        double yy = 0.0;
        for (const Vector& v : y) yy += dot(v, v);
        for (const Vector& h : normalized_prev) {
          Vector a(dm, 0.0);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < dm; ++k) a[k] += h[i] * y[i][k];
          constraints.push_back(std::move(a));
        }
        Vector u = umlda_detail::solve_mode_update(s.between, s.within, diag.ridge, constraints,
                                                   1e-9 * std::sqrt(yy));
        diag.objective.push_back(ratio(s.between, s.within, diag.ridge, u));
        modes[static_cast<std::size_t>(m - 1)] = std::move(u);
      }
      diag.iterations = iter;
      const double current = diag.objective.back();
      if (iter > 1 && current - previous <= options.tol * std::abs(previous)) {
        diag.converged = true;
        break;
      }
      previous = current;
    }

    Emp emp;
    emp.modes.assign(modes.begin(), modes.begin() + order);
    Vector g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = contract_emp(xc[i], emp);
    for (std::size_t q = 0; q < history.size(); ++q) {
      const double hh = dot(history[q], history[q]);
      const double beta = hh > 0.0 ? dot(g, history[q]) / hh : 0.0;
      model.deflation(p, q) = beta;
      for (std::size_t i = 0; i < n; ++i) g[i] -= beta * history[q][i];
    }
    for (std::size_t i = 0; i < n; ++i) model.training_features(i, p) = g[i];
    history.push_back(std::move(g));
    model.emps.push_back(std::move(emp));
    model.diagnostics.push_back(std::move(diag));
  }
  return model;
}

UmldaModel UmldaModel::truncated(std::size_t p) const {
  require(p >= 1 && p <= count(), ErrorKind::Config,
          "cannot truncate " + std::to_string(count()) + " EMPs to " + std::to_string(p));
  UmldaModel out;
  out.order = order;
  out.dims = dims;
  out.mean = mean;
  out.gamma = gamma;
  out.emps.assign(emps.begin(), emps.begin() + static_cast<std::ptrdiff_t>(p));
  out.diagnostics.assign(diagnostics.begin(), diagnostics.begin() + static_cast<std::ptrdiff_t>(p));
  out.deflation = Matrix(p, p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) out.deflation(a, b) = deflation(a, b);
  const std::size_t n = training_features.rows();
  if (n > 0) {
    out.training_features = Matrix(n, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t b = 0; b < p; ++b) out.training_features(i, b) = training_features(i, b);
  }
  return out;
}

Vector project_tvp_raw(const UmldaModel& m, const Tensor3& t) {
  require(t.dims() == m.dims, ErrorKind::Dimension, "tensor dims do not match the model");
  const Tensor3 xc = centered(t, m.mean);
  Vector g(m.count());
  for (std::size_t p = 0; p < m.count(); ++p) g[p] = contract_emp(xc, m.emps[p]);
  return g;
}

Vector project_tvp(const UmldaModel& m, const Tensor3& t) {
  Vector g = project_tvp_raw(m, t);
  for (std::size_t p = 0; p < g.size(); ++p)
    for (std::size_t q = 0; q < p; ++q) g[p] -= m.deflation(p, q) * g[q];
  return g;
}

Matrix component_map(const UmldaModel& m, std::size_t p) {
  require(p >= 1 && p <= m.count(), ErrorKind::Dimension,
          "EMP index " + std::to_string(p) + " out of range");
  const Vector& a = m.emps[p - 1].modes[0];
  const Vector& b = m.emps[p - 1].modes[1];
  Matrix out(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = a[i] * b[j];
  return out;
}

Matrix emp_map(const UmldaModel& m, std::size_t p) { return normalize_gray(component_map(m, p)); }

}  // namespace ghm

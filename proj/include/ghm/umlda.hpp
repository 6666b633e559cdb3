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

#ifndef GHM_UMLDA_HPP
#define GHM_UMLDA_HPP

// Regularized uncorrelated multilinear discriminant analysis.
//
// Each feature p is an elementary multilinear projection (EMP): one unit
// vector per tensor mode, y_p = X̃ ×_1 u⁽¹⁾ ×_2 u⁽²⁾ [×_3 u⁽³⁾]. EMPs are
// extracted greedily. For EMP p the mode vectors are found by alternating
// projections: with all other modes fixed, the samples are contracted to
// mode-m vectors and u⁽ᵐ⁾ is the leading generalized eigenvector of
//
//     S_B⁽ᵐ⁾ u = λ (S_W⁽ᵐ⁾ + ρ_p I) u,   ρ_p = γ · tr(S_W⁽¹⁾)/d_1 at initialization,
//
// restricted to directions whose training features are orthogonal to the
// features of EMPs 1..p−1. ρ_p is held fixed while EMP p is refined, so every
// mode update maximizes the same criterion B/(W + ρ_p) and the criterion is
// non-decreasing once the iterate is feasible. A final Gram-Schmidt pass on
// the scalar training features removes residual correlation; its weights are
// stored and applied to test samples.

#include <cstddef>
#include <span>
#include <vector>

#include "ghm/linalg.hpp"

namespace ghm {

/// Elementary multilinear projection: one unit vector per mode.
struct Emp {
  std::vector<Vector> modes;
};

struct EmpDiagnostics {
  std::size_t iterations = 0;
  bool converged = false;
  double ridge = 0.0;
  /// Criterion B/(W + ρ) after every mode update.
  Vector objective;
  /// Index into `objective` from which the iterate satisfies the
  /// decorrelation constraint (0 for the first EMP, 1 afterwards).
  std::size_t feasible_from = 0;
};

struct UmldaOptions {
  std::size_t p = 3;
  double gamma = 1e-2;
  std::size_t max_iter = 20;
  double tol = 1e-6;
};

struct UmldaModel {
  int order = 2;
  Tensor3::Dims dims{0, 0, 0};
  Tensor3 mean;
  double gamma = 0.0;
  std::vector<Emp> emps;
  /// P × P; entry (p, q) for q < p is the weight of decorrelated feature q
  /// removed from raw feature p.
  Matrix deflation;
  /// N × P decorrelated training features.
  Matrix training_features;
  std::vector<EmpDiagnostics> diagnostics;

  std::size_t count() const { return emps.size(); }
  UmldaModel truncated(std::size_t p) const;
};

UmldaModel fit_rumlda(std::span<const Tensor3> data, std::span<const int> labels,
                      const UmldaOptions& options);

/// Full contraction of t with every mode vector of e.
double contract_emp(const Tensor3& t, const Emp& e);

/// Contractions of (t − mean) with each EMP, without decorrelation.
Vector project_tvp_raw(const UmldaModel& m, const Tensor3& t);

/// Decorrelated features, consistent with `training_features`.
Vector project_tvp(const UmldaModel& m, const Tensor3& t);

/// u_p⁽¹⁾·u_p⁽²⁾ᵀ (time × frequency), p 1-based, before display scaling.
Matrix component_map(const UmldaModel& m, std::size_t p);
Matrix emp_map(const UmldaModel& m, std::size_t p);

namespace umlda_detail {

/// Contracts t with every mode vector except mode m (1-based). For a
/// second-order tensor pass a single-entry {1} vector as the third mode.
Vector partial_projection(const Tensor3& t, const std::vector<Vector>& modes, int m);

/// Leading generalized eigenvector of between·u = λ(within + ridge·I)u over
/// unit vectors orthogonal to every constraint vector. Constraint directions
/// whose Gram-Schmidt residual is below drop_tol are ignored.
Vector solve_mode_update(const Matrix& between, const Matrix& within, double ridge,
                         std::span<const Vector> constraints, double drop_tol);

}  // namespace umlda_detail

}  // namespace ghm

#endif  // GHM_UMLDA_HPP

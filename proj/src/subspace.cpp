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

#include "ghm/subspace.hpp"

#include "ghm/error.hpp"

namespace ghm {

std::string to_string(Method m) {
  switch (m) {
    case Method::Pca: return "pca";
    case Method::PcaLda: return "pca_lda";
    case Method::Rumlda: return "rumlda";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "pca") return Method::Pca;
  if (name == "pca_lda") return Method::PcaLda;
  if (name == "rumlda") return Method::Rumlda;
  fail(ErrorKind::Config, "unknown method '" + name + "' (expected pca, pca_lda or rumlda)");
}

Method method_of(const SubspaceModel& m) {
  return static_cast<Method>(m.index());
}

std::size_t feature_count(const SubspaceModel& m) {
  return std::visit([](const auto& x) { return x.count(); }, m);
}

namespace {

MapDims map_dims(const SampleShape& s) { return {s.frames, s.bins * s.channels}; }

}  // namespace

SubspaceModel fit_subspace(const Dataset& train, const SubspaceConfig& cfg) {
  train.validate();
  switch (cfg.method) {
    case Method::Pca:
      return fit_pca(train.samples, cfg.p, map_dims(train.shape), cfg.solver);
    case Method::PcaLda:
      return fit_pca_lda(train.samples, train.labels, cfg.p, cfg.p_prime, map_dims(train.shape),
                         cfg.solver);
    case Method::Rumlda: {
      std::vector<Tensor3> tensors;
      tensors.reserve(train.size());
      for (std::size_t i = 0; i < train.size(); ++i) tensors.push_back(train.tensor(i));
      UmldaOptions opt;
      opt.p = cfg.p;
      opt.gamma = cfg.gamma;
      opt.max_iter = cfg.max_iter;
      opt.tol = cfg.tol;
      return fit_rumlda(tensors, train.labels, opt);
    }
  }
  fail(ErrorKind::Config, "unknown method");
}

Vector project(const SubspaceModel& m, std::span<const double> sample, const SampleShape& shape) {
  require(sample.size() == shape.size(), ErrorKind::Dimension,
          "sample length " + std::to_string(sample.size()) + " does not match its shape");
  if (const auto* pca = std::get_if<PcaModel>(&m)) return project_pca(*pca, sample);
  if (const auto* f = std::get_if<FisherModel>(&m)) return project_fisher(*f, sample);
  const auto& u = std::get<UmldaModel>(m);
  return project_tvp(u, Tensor3(shape.dims(), Vector(sample.begin(), sample.end())));
}

Matrix display_map(const SubspaceModel& m, std::size_t p) {
  if (const auto* pca = std::get_if<PcaModel>(&m)) return eigen_map(*pca, p);
  if (const auto* f = std::get_if<FisherModel>(&m)) return discriminant_map(*f, p);
  return emp_map(std::get<UmldaModel>(m), p);
}

}  // namespace ghm

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

#include "ghm/pipeline.hpp"

#include "ghm/error.hpp"
#include "ghm/parallel.hpp"

namespace ghm {

Vector TrainedPipeline::features(std::span<const double> sample) const {
  return project(subspace, sample, shape);
}

Vector TrainedPipeline::scores(std::span<const double> sample) const {
  return ecoc_scores(classifier, features(sample));
}

int TrainedPipeline::predict(std::span<const double> sample) const {
  return predict_ecoc(classifier, features(sample));
}

std::vector<Vector> project_all(const SubspaceModel& m, const Dataset& data) {
  std::vector<Vector> out(data.size());
  parallel_for(data.size(),
               [&](std::size_t i) { out[i] = project(m, data.samples[i], data.shape); });
  return out;
}

TrainedPipeline attach_classifier(SubspaceModel subspace, const Dataset& train,
                                  const ClassifierConfig& cfg) {
  const auto features = project_all(subspace, train);
  SvmOptions opt;
  opt.c = cfg.c;
  opt.tol = cfg.tol;
  opt.scale = cfg.median_scale ? median_kernel_scale(features) : cfg.scale;
  TrainedPipeline out;
  out.mode = train.mode;
  out.shape = train.shape;
  out.classifier = train_ecoc(features, train.labels, opt, cfg.coding);
  out.subspace = std::move(subspace);
  return out;
}

TrainedPipeline fit_pipeline(const Dataset& train, const PipelineConfig& cfg) {
  return attach_classifier(fit_subspace(train, cfg.subspace), train, cfg.classifier);
}

std::vector<int> predict_all(const TrainedPipeline& p, const Dataset& data) {
  require(data.shape == p.shape, ErrorKind::Dimension,
          "dataset sample shape does not match the model");
  std::vector<int> out(data.size());
  parallel_for(data.size(), [&](std::size_t i) { out[i] = p.predict(data.samples[i]); });
  return out;
}

}  // namespace ghm

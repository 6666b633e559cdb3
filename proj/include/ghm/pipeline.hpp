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

#ifndef GHM_PIPELINE_HPP
#define GHM_PIPELINE_HPP

// Subspace learner followed by the ECOC classifier.

#include <span>
#include <vector>

#include "ghm/dataset.hpp"
#include "ghm/subspace.hpp"
#include "ghm/svm.hpp"

namespace ghm {

struct ClassifierConfig {
  double c = 10.0;
  /// When set, the kernel scale is the median pairwise squared distance of
  /// the training features; otherwise `scale` is used as given.
  bool median_scale = true;
  double scale = 1.0;
  double tol = 1e-3;
  Coding coding = Coding::OneVsOne;

  bool operator==(const ClassifierConfig&) const = default;
};

struct PipelineConfig {
  SubspaceConfig subspace;
  ClassifierConfig classifier;

  bool operator==(const PipelineConfig&) const = default;
};

struct TrainedPipeline {
  InputMode mode = InputMode::Merged;
  SampleShape shape;
  SubspaceModel subspace;
  EcocClassifier classifier;

  Vector features(std::span<const double> sample) const;
  Vector scores(std::span<const double> sample) const;
  int predict(std::span<const double> sample) const;
};

TrainedPipeline fit_pipeline(const Dataset& train, const PipelineConfig& cfg);

/// Trains the classifier on the projections of `train` through `subspace`.
TrainedPipeline attach_classifier(SubspaceModel subspace, const Dataset& train,
                                  const ClassifierConfig& cfg);

std::vector<Vector> project_all(const SubspaceModel& m, const Dataset& data);
std::vector<int> predict_all(const TrainedPipeline& p, const Dataset& data);

}  // namespace ghm

#endif  // GHM_PIPELINE_HPP

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

#ifndef GHM_EVALUATION_HPP
#define GHM_EVALUATION_HPP

// Splits, cross-validation, feature-count sweeps and reporting.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ghm/dataset.hpp"
#include "ghm/pipeline.hpp"
#include "ghm/subspace.hpp"

namespace ghm {

struct SplitSpec {
  double train_fraction = 0.80;
  std::size_t folds = 5;
  std::uint64_t seed = 42;
  bool stratified = true;

  void validate() const;
  bool operator==(const SplitSpec&) const = default;
};

struct Partition {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

/// Train size is round(N·train_fraction). Stratified splits give each class
/// floor(n_c·f) training samples and hand the remaining slots to the classes
/// with the largest fractional parts (lower label first on ties).
Partition split(std::span<const int> labels, const SplitSpec& spec);

/// Fold membership; every index appears in exactly one fold.
std::vector<std::vector<std::size_t>> kfold_indices(std::span<const int> labels,
                                                    const SplitSpec& spec);

struct MetricsReport {
  std::string split_tag;
  std::vector<int> classes;
  std::vector<std::vector<std::size_t>> confusion;  // row = truth, column = prediction
  Vector precision;
  Vector recall;
  Vector f1;
  double accuracy = 0.0;
  std::size_t total = 0;

  double macro_f1() const;
};

MetricsReport confusion_and_f1(std::span<const int> predictions, std::span<const int> truths,
                               std::span<const int> classes, const std::string& tag = "");

struct CvReport {
  std::vector<MetricsReport> folds;
  MetricsReport pooled;  // all held-out predictions of the evaluated folds
  double mean_accuracy = 0.0;
  std::size_t skipped = 0;  // folds whose training part lacked a class
};

CvReport kfold_cv(const Dataset& train, const SplitSpec& spec, const PipelineConfig& cfg);

struct SweepPoint {
  std::size_t p = 0;
  std::size_t p_prime = 0;  // PCA-LDA discriminant count, else equal to p
  double train_accuracy = 0.0;
  double cv_accuracy = 0.0;
  double test_accuracy = 0.0;
};

struct SweepResult {
  Method method = Method::Pca;
  std::vector<SweepPoint> points;
  std::size_t optimal_p = 0;
  /// P values whose training accuracy is below that of the previous point.
  std::vector<std::size_t> train_trend_violations;
  std::size_t skipped_folds = 0;
};

/// For every P in p_values (strictly increasing): training accuracy of a
/// model fitted on the training split, mean k-fold CV accuracy inside the
/// training split, and test-split accuracy. The PCA-LDA sweep varies the PCA
/// dimension and uses min(P, c − 1) discriminants.
SweepResult feature_sweep(const Dataset& data, const PipelineConfig& base,
                          std::span<const std::size_t> p_values, const SplitSpec& spec);

/// Pipelines for every P in p_values fitted on `train`, sharing one subspace
/// fit where the learner allows it.
std::vector<TrainedPipeline> fit_nested(const Dataset& train, const PipelineConfig& base,
                                        std::span<const std::size_t> p_values);

void write_curves_csv(std::ostream& out, const SweepResult& sweep);

/// θ_p = y_p² / Σ_q y_q²; uniform for the zero vector.
Vector interpretation_theta(std::span<const double> y);

struct ThetaReport {
  std::vector<int> classes;
  Matrix mean;  // classes × P
  std::vector<Vector> per_sample;
};

ThetaReport theta_report(std::span<const Vector> features, std::span<const int> labels);

/// CSV with header label,y1..yP and one row per sample.
void write_projections_csv(std::ostream& out, std::span<const Vector> features,
                           std::span<const int> labels);
void read_projections_csv(std::istream& in, std::vector<Vector>& features,
                          std::vector<int>& labels);

/// {method, P, splits: {tag: {...}}, confusion, f1, theta}. The top-level
/// confusion and f1 repeat the last split.
std::string metrics_json(Method method, std::size_t p, std::span<const MetricsReport> splits,
                         const ThetaReport* theta);

}  // namespace ghm

#endif  // GHM_EVALUATION_HPP

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

#include "ghm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ghm/error.hpp"
#include "ghm/parallel.hpp"
#include "ghm/rng.hpp"

namespace ghm {

namespace {

constexpr std::uint64_t kSplitTag = 0x73706c6974;  // "split"
constexpr std::uint64_t kFoldTag = 0x666f6c64;     // "fold"

std::vector<std::size_t> class_members(std::span<const int> labels, int c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == c) out.push_back(i);
  return out;
}

std::uint64_t label_tag(int c) { return static_cast<std::uint64_t>(static_cast<std::int64_t>(c)); }

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

void SplitSpec::validate() const {
  require(train_fraction > 0.0 && train_fraction < 1.0, ErrorKind::Config,
          "train_fraction must lie strictly between 0 and 1");
  require(folds >= 2, ErrorKind::Config, "folds must be at least 2");
}

Partition split(std::span<const int> labels, const SplitSpec& spec) {
  spec.validate();
  const std::size_t n = labels.size();
  require(n >= 2, ErrorKind::Config, "cannot split fewer than 2 samples");
  const auto total_train =
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * spec.train_fraction));
  require(total_train >= 1 && total_train < n, ErrorKind::Config,
          "split leaves an empty training or test set");

  Partition out;
  if (!spec.stratified) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    Rng rng(derive_seed(spec.seed, {kSplitTag}));
    rng.shuffle(std::span<std::size_t>(all));
    out.train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(total_train));
    out.test.assign(all.begin() + static_cast<std::ptrdiff_t>(total_train), all.end());
  } else {
    const auto classes = distinct_labels(labels);
    std::vector<std::vector<std::size_t>> members;
    std::vector<std::size_t> quota;
    std::vector<double> frac;
    std::size_t assigned = 0;
    for (int c : classes) {
      members.push_back(class_members(labels, c));
      const std::size_t nc = members.back().size();
      require(nc >= spec.folds, ErrorKind::Config,
              "class " + class_name(c) + " has " + std::to_string(nc) +
                  " samples, fewer than the " + std::to_string(spec.folds) +
                  " folds stratification needs");
      const double exact = static_cast<double>(nc) * spec.train_fraction;
      quota.push_back(static_cast<std::size_t>(std::floor(exact)));
      frac.push_back(exact - std::floor(exact));
      assigned += quota.back();
    }
    std::vector<std::size_t> order(classes.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (std::size_t k = 0; assigned < total_train && k < order.size(); ++k, ++assigned)
      ++quota[order[k]];
    for (std::size_t k = 0; k < classes.size(); ++k) {
      auto& m = members[k];
      Rng rng(derive_seed(spec.seed, {kSplitTag, label_tag(classes[k])}));
      rng.shuffle(std::span<std::size_t>(m));
      out.train.insert(out.train.end(), m.begin(), m.begin() + static_cast<std::ptrdiff_t>(quota[k]));
      out.test.insert(out.test.end(), m.begin() + static_cast<std::ptrdiff_t>(quota[k]), m.end());
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::vector<std::vector<std::size_t>> kfold_indices(std::span<const int> labels,
                                                    const SplitSpec& spec) {
  spec.validate();
  require(labels.size() >= spec.folds, ErrorKind::Config,
          "fewer samples than folds");
  std::vector<std::vector<std::size_t>> folds(spec.folds);
  std::size_t offset = 0;
  auto deal = [&](std::vector<std::size_t>& items, std::uint64_t stream) {
    Rng rng(stream);
    rng.shuffle(std::span<std::size_t>(items));
    for (std::size_t k = 0; k < items.size(); ++k)
      folds[(offset + k) % spec.folds].push_back(items[k]);
    offset += items.size();
  };
  if (spec.stratified) {
    for (int c : distinct_labels(labels)) {
      auto m = class_members(labels, c);
      deal(m, derive_seed(spec.seed, {kFoldTag, label_tag(c)}));
    }
  } else {
    std::vector<std::size_t> all(labels.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    deal(all, derive_seed(spec.seed, {kFoldTag}));
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

double MetricsReport::macro_f1() const {
  if (f1.empty()) return 0.0;
  double s = 0.0;
  for (double v : f1) s += v;
  return s / static_cast<double>(f1.size());
}

MetricsReport confusion_and_f1(std::span<const int> predictions, std::span<const int> truths,
                               std::span<const int> classes, const std::string& tag) {
  require(predictions.size() == truths.size(), ErrorKind::Dimension,
          "predictions and truths differ in length");
  MetricsReport r;
  r.split_tag = tag;
  r.classes.assign(classes.begin(), classes.end());
  const std::size_t c = classes.size();
  r.confusion.assign(c, std::vector<std::size_t>(c, 0));
  auto index_of = [&](int label) {
    const auto it = std::find(classes.begin(), classes.end(), label);
    require(it != classes.end(), ErrorKind::Config,
            "label " + std::to_string(label) + " is outside the class set");
    return static_cast<std::size_t>(it - classes.begin());
  };
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const std::size_t t = index_of(truths[i]);
    const std::size_t p = index_of(predictions[i]);
    ++r.confusion[t][p];
    if (t == p) ++correct;
  }
  r.total = truths.size();
  r.accuracy = r.total > 0 ? static_cast<double>(correct) / static_cast<double>(r.total) : 0.0;
  r.precision.assign(c, 0.0);
  r.recall.assign(c, 0.0);
  r.f1.assign(c, 0.0);
  for (std::size_t k = 0; k < c; ++k) {
    std::size_t predicted = 0;
    std::size_t actual = 0;
    for (std::size_t j = 0; j < c; ++j) {
      predicted += r.confusion[j][k];
      actual += r.confusion[k][j];
    }
    const double tp = static_cast<double>(r.confusion[k][k]);
    if (predicted > 0) r.precision[k] = tp / static_cast<double>(predicted);
    if (actual > 0) r.recall[k] = tp / static_cast<double>(actual);
    const double s = r.precision[k] + r.recall[k];
    r.f1[k] = s > 0.0 ? 2.0 * r.precision[k] * r.recall[k] / s : 0.0;
  }
  return r;
}

namespace {

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& held) {
  std::vector<bool> out(n, false);
  for (std::size_t i : held) out[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!out[i]) rest.push_back(i);
  return rest;
}

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) ok += pred[i] == truth[i] ? 1 : 0;
  return pred.empty() ? 0.0 : static_cast<double>(ok) / static_cast<double>(pred.size());
}

}  // namespace

CvReport kfold_cv(const Dataset& train, const SplitSpec& spec, const PipelineConfig& cfg) {
  train.validate();
  const auto folds = kfold_indices(train.labels, spec);
  const auto classes = distinct_labels(train.labels);
  std::vector<std::optional<std::vector<int>>> preds(folds.size());
  parallel_for(folds.size(), [&](std::size_t f) {
    const auto rest = complement(train.size(), folds[f]);
    const Dataset fit_part = train.subset(rest);
    if (distinct_labels(fit_part.labels) != classes) return;
    const auto model = fit_pipeline(fit_part, cfg);
    preds[f] = predict_all(model, train.subset(folds[f]));
  });

  CvReport out;
  std::vector<int> all_pred;
  std::vector<int> all_truth;
  double acc_sum = 0.0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (!preds[f]) {
      ++out.skipped;
      continue;
    }
    std::vector<int> truth;
    for (std::size_t i : folds[f]) truth.push_back(train.labels[i]);
    out.folds.push_back(confusion_and_f1(*preds[f], truth, classes, "fold" + std::to_string(f + 1)));
    acc_sum += out.folds.back().accuracy;
    all_pred.insert(all_pred.end(), preds[f]->begin(), preds[f]->end());
    all_truth.insert(all_truth.end(), truth.begin(), truth.end());
  }
  require(!out.folds.empty(), ErrorKind::Config, "every fold lacked a class; cannot cross-validate");
  out.mean_accuracy = acc_sum / static_cast<double>(out.folds.size());
  out.pooled = confusion_and_f1(all_pred, all_truth, classes, "cv");
  return out;
}

std::vector<TrainedPipeline> fit_nested(const Dataset& train, const PipelineConfig& base,
                                        std::span<const std::size_t> p_values) {
  require(!p_values.empty(), ErrorKind::Config, "empty feature-count range");
  for (std::size_t k = 0; k < p_values.size(); ++k)
    require(p_values[k] >= 1 && (k == 0 || p_values[k] > p_values[k - 1]), ErrorKind::Config,
            "feature counts must be positive and strictly increasing");
  SubspaceConfig full = base.subspace;
  full.p = p_values.back();
  full.p_prime = 0;

  std::vector<TrainedPipeline> out(p_values.size());
  switch (full.method) {
    case Method::Pca: {
      const auto pca = std::get<PcaModel>(fit_subspace(train, full));
      parallel_for(p_values.size(), [&](std::size_t k) {
        out[k] = attach_classifier(pca.truncated(p_values[k]), train, base.classifier);
      });
      break;
    }
    case Method::PcaLda: {
      SubspaceConfig pc = full;
      pc.method = Method::Pca;
      const auto pca = std::get<PcaModel>(fit_subspace(train, pc));
      parallel_for(p_values.size(), [&](std::size_t k) {
        auto f = fit_lda_stage(pca.truncated(p_values[k]), train.samples, train.labels, 0);
        out[k] = attach_classifier(std::move(f), train, base.classifier);
      });
      break;
    }
    case Method::Rumlda: {
      const auto u = std::get<UmldaModel>(fit_subspace(train, full));
      parallel_for(p_values.size(), [&](std::size_t k) {
        out[k] = attach_classifier(u.truncated(p_values[k]), train, base.classifier);
      });
      break;
    }
  }
  return out;
}

SweepResult feature_sweep(const Dataset& data, const PipelineConfig& base,
                          std::span<const std::size_t> p_values, const SplitSpec& spec) {
  data.validate();
  const Partition part = split(data.labels, spec);
  const Dataset train = data.subset(part.train);
  const Dataset test = data.subset(part.test);
  const auto classes = distinct_labels(train.labels);

  SweepResult out;
  out.method = base.subspace.method;
  const std::size_t np = p_values.size();

  const auto folds = kfold_indices(train.labels, spec);
  std::vector<std::optional<Vector>> fold_acc(folds.size());
  parallel_for(folds.size(), [&](std::size_t f) {
    const Dataset fit_part = train.subset(complement(train.size(), folds[f]));
    if (distinct_labels(fit_part.labels) != classes) return;
    const Dataset held = train.subset(folds[f]);
    const auto models = fit_nested(fit_part, base, p_values);
    Vector acc(np);
    for (std::size_t k = 0; k < np; ++k) acc[k] = accuracy(predict_all(models[k], held), held.labels);
    fold_acc[f] = std::move(acc);
  });

  Vector cv(np, 0.0);
  std::size_t used = 0;
  for (const auto& a : fold_acc) {
    if (!a) {
      ++out.skipped_folds;
      continue;
    }
    ++used;
    for (std::size_t k = 0; k < np; ++k) cv[k] += (*a)[k];
  }
  require(used > 0, ErrorKind::Config, "every fold lacked a class; cannot cross-validate");

  const auto models = fit_nested(train, base, p_values);
  for (std::size_t k = 0; k < np; ++k) {
    SweepPoint pt;
    pt.p = p_values[k];
    pt.p_prime = feature_count(models[k].subspace);
    pt.cv_accuracy = cv[k] / static_cast<double>(used);
    pt.train_accuracy = accuracy(predict_all(models[k], train), train.labels);
    pt.test_accuracy = accuracy(predict_all(models[k], test), test.labels);
    out.points.push_back(pt);
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < np; ++k)
    if (out.points[k].cv_accuracy > out.points[best].cv_accuracy) best = k;
  out.optimal_p = out.points[best].p;
  for (std::size_t k = 1; k < np; ++k)
    if (out.points[k].train_accuracy < out.points[k - 1].train_accuracy)
      out.train_trend_violations.push_back(out.points[k].p);
  return out;
}

void write_curves_csv(std::ostream& out, const SweepResult& sweep) {
  out << "p,p_prime,train_accuracy,cv_accuracy,test_accuracy\n";
  for (const auto& pt : sweep.points) {
    out << pt.p << ',' << pt.p_prime << ',' << format_double(pt.train_accuracy, 17) << ','
        << format_double(pt.cv_accuracy, 17) << ',' << format_double(pt.test_accuracy, 17) << '\n';
  }
}

Vector interpretation_theta(std::span<const double> y) {
  Vector theta(y.size(), 0.0);
  if (y.empty()) return theta;
  double total = 0.0;
  for (double v : y) total += v * v;
  if (!(total > 0.0)) {
    std::fill(theta.begin(), theta.end(), 1.0 / static_cast<double>(y.size()));
    return theta;
  }
  for (std::size_t p = 0; p < y.size(); ++p) theta[p] = y[p] * y[p] / total;
  return theta;
}

ThetaReport theta_report(std::span<const Vector> features, std::span<const int> labels) {
  require(features.size() == labels.size(), ErrorKind::Dimension,
          "one label per feature vector required");
  ThetaReport r;
  r.classes = distinct_labels(labels);
  const std::size_t p = features.empty() ? 0 : features[0].size();
  r.mean = Matrix(std::max<std::size_t>(r.classes.size(), 1), std::max<std::size_t>(p, 1));
  std::vector<std::size_t> counts(r.classes.size(), 0);
  for (std::size_t i = 0; i < features.size(); ++i) {
    require(features[i].size() == p, ErrorKind::Dimension, "feature vectors differ in length");
    r.per_sample.push_back(interpretation_theta(features[i]));
    const auto c = static_cast<std::size_t>(
        std::lower_bound(r.classes.begin(), r.classes.end(), labels[i]) - r.classes.begin());
    ++counts[c];
    for (std::size_t k = 0; k < p; ++k) r.mean(c, k) += r.per_sample.back()[k];
  }
  for (std::size_t c = 0; c < r.classes.size(); ++c)
    for (std::size_t k = 0; k < p; ++k) r.mean(c, k) /= static_cast<double>(counts[c]);
  return r;
}

void write_projections_csv(std::ostream& out, std::span<const Vector> features,
                           std::span<const int> labels) {
  require(features.size() == labels.size(), ErrorKind::Dimension,
          "one label per feature vector required");
  const std::size_t p = features.empty() ? 0 : features[0].size();
  out << "label";
  for (std::size_t k = 1; k <= p; ++k) out << ",y" << k;
  out << '\n';
  for (std::size_t i = 0; i < features.size(); ++i) {
    out << labels[i];
    for (double v : features[i]) out << ',' << format_double(v, 9);
    out << '\n';
  }
}

void read_projections_csv(std::istream& in, std::vector<Vector>& features,
                          std::vector<int>& labels) {
  features.clear();
  labels.clear();
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line.rfind("label", 0) == 0,
          ErrorKind::CorruptData, "projection CSV lacks its header");
  const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    require(cells.size() == columns + 1, ErrorKind::CorruptData,
            "projection CSV row " + std::to_string(row) + " has the wrong column count");
    try {
      labels.push_back(std::stoi(cells[0]));
      Vector y;
      for (std::size_t k = 1; k < cells.size(); ++k) y.push_back(std::stod(cells[k]));
      features.push_back(std::move(y));
    } catch (const std::exception&) {
      fail(ErrorKind::CorruptData, "projection CSV row " + std::to_string(row) + " is malformed");
    }
  }
}

std::string metrics_json(Method method, std::size_t p, std::span<const MetricsReport> splits,
                         const ThetaReport* theta) {
  using nlohmann::ordered_json;
  auto per_class = [](const MetricsReport& r, const Vector& v) {
    ordered_json o = ordered_json::object();
    for (std::size_t k = 0; k < r.classes.size(); ++k) o[class_name(r.classes[k])] = v[k];
    return o;
  };
  ordered_json j;
  j["method"] = to_string(method);
  j["P"] = p;
  ordered_json s = ordered_json::object();
  for (const auto& r : splits) {
    ordered_json e;
    e["accuracy"] = r.accuracy;
    e["macro_f1"] = r.macro_f1();
    e["total"] = r.total;
    e["f1"] = per_class(r, r.f1);
    e["precision"] = per_class(r, r.precision);
    e["recall"] = per_class(r, r.recall);
    e["confusion"] = r.confusion;
    s[r.split_tag] = std::move(e);
  }
  j["splits"] = std::move(s);
  if (!splits.empty()) {
    const auto& last = splits.back();
    ordered_json classes = ordered_json::array();
    for (int c : last.classes) classes.push_back(class_name(c));
    j["classes"] = std::move(classes);
    j["confusion"] = last.confusion;
    j["f1"] = per_class(last, last.f1);
  }
  if (theta != nullptr) {
    ordered_json t = ordered_json::object();
    for (std::size_t c = 0; c < theta->classes.size(); ++c) {
      auto row = theta->mean.row(c);
      t[class_name(theta->classes[c])] = std::vector<double>(row.begin(), row.end());
    }
    j["theta"] = std::move(t);
  }
  return j.dump(2) + "\n";
}

}  // namespace ghm

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

#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "ghm/config.hpp"
#include "ghm/evaluation.hpp"
#include "ghm/io.hpp"
#include "ghm/model_io.hpp"
#include "ghm/parallel.hpp"
#include "ghm/synth.hpp"

namespace ghm::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::MissingInput: return 3;
    case ErrorKind::CorruptData:
    case ErrorKind::Dimension: return 4;
    case ErrorKind::Numeric:
    case ErrorKind::Singularity: return 5;
    case ErrorKind::Io: return 1;
  }
  return 1;
}

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t threads = 0;
  std::string input;
  std::string data;
  std::string model;
  std::string split = "test";
  std::string method;
  std::string range;
  bool transpose = false;
};

RunConfig run_config(const Options& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  if (o.seed) cfg.set_seed(*o.seed);
  cfg.validate();
  return cfg;
}

std::string observation_file(int label, std::uint64_t index) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%04llu.ghrw", class_name(label).c_str(),
                static_cast<unsigned long long>(index));
  return buf;
}

void write_text(const fs::path& path, const std::string& text) { write_file_atomic(path, text); }

void check_dataset(const Dataset& ds, const AssembleConfig& a) {
  require(ds.mode == a.mode && ds.shape == a.shape(), ErrorKind::Dimension,
          "dataset was featurized as " + to_string(ds.mode) + " " +
              std::to_string(ds.shape.frames) + "x" + std::to_string(ds.shape.bins) + "x" +
              std::to_string(ds.shape.channels) + " but the configuration expects " +
              to_string(a.mode) + " " + std::to_string(a.shape().frames) + "x" +
              std::to_string(a.shape().bins) + "x" + std::to_string(a.shape().channels));
}

int cmd_gen(const Options& o, std::ostream& out) {
  const RunConfig cfg = run_config(o);
  const fs::path dir = o.out;
  const LabeledObservations obs = gen_dataset(cfg.synth);
  ordered_json files = ordered_json::array();
  for (std::size_t k = 0; k < obs.labels.size(); ++k) {
    const std::string name = observation_file(obs.labels[k], obs.indices[k]);
    const std::string bytes = encode_ghrw(obs.observations[k]);
    write_file_atomic(dir / name, bytes);
    files.push_back({{"file", name},
                     {"class", class_name(obs.labels[k])},
                     {"label", obs.labels[k]},
                     {"index", obs.indices[k]},
                     {"fnv1a64", hex_u64(fnv1a64(bytes))}});
  }
  ordered_json manifest;
  manifest["generator"] = "ghm synthetic vibration generator (synthetic data, not measurements)";
  manifest["seed"] = cfg.seed;
  manifest["config"] = ordered_json::parse(dump_run_config(cfg));
  ordered_json counts;
  for (int c = 0; c < kQualityClassCount; ++c)
    counts[class_name(c)] = cfg.synth.counts[static_cast<std::size_t>(c)];
  manifest["counts"] = counts;
  manifest["total"] = obs.labels.size();
  manifest["observations"] = files;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << obs.labels.size() << " observations to " << dir.string() << "\n";
  return 0;
}

int cmd_featurize(const Options& o, std::ostream& out) {
  const RunConfig cfg = run_config(o);
  const fs::path dir = o.input;
  const std::string text = read_file(dir / "manifest.json");
  ordered_json manifest;
  try {
    manifest = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::CorruptData, "manifest.json is malformed: " + std::string(e.what()));
  }
  std::vector<RawObservation> raws;
  std::vector<int> labels;
  try {
    for (const auto& entry : manifest.at("observations")) {
      const auto name = entry.at("file").get<std::string>();
      const std::string bytes = read_file(dir / name);
      require(hex_u64(fnv1a64(bytes)) == entry.at("fnv1a64").get<std::string>(),
              ErrorKind::CorruptData, name + " does not match its manifest checksum");
      raws.push_back(decode_ghrw(bytes));
      labels.push_back(entry.at("label").get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::CorruptData, "manifest.json is malformed: " + std::string(e.what()));
  }
  const Dataset ds = assemble_dataset(raws, labels, cfg.assemble);
  save_ghds(o.out, ds);
  out << "featurized " << ds.size() << " observations (" << to_string(ds.mode) << ", "
      << ds.shape.frames << "x" << ds.shape.bins << "x" << ds.shape.channels << ") into " << o.out
      << "\n";
  return 0;
}

Dataset split_part(const Dataset& ds, const SplitSpec& spec, const std::string& which) {
  if (which == "all") return ds;
  const Partition part = split(ds.labels, spec);
  if (which == "train") return ds.subset(part.train);
  if (which == "test") return ds.subset(part.test);
  fail(ErrorKind::Config, "--split must be train, test or all");
}

std::string report_json(const TrainedPipeline& p, const Dataset& part, const std::string& tag) {
  const auto features = project_all(p.subspace, part);
  std::vector<int> pred(part.size());
  for (std::size_t i = 0; i < part.size(); ++i) pred[i] = predict_ecoc(p.classifier, features[i]);
  const MetricsReport r = confusion_and_f1(pred, part.labels, p.classifier.classes, tag);
  const ThetaReport theta = theta_report(features, part.labels);
  return metrics_json(method_of(p.subspace), feature_count(p.subspace),
                      std::span<const MetricsReport>(&r, 1), &theta);
}

int cmd_train(const Options& o, std::ostream& out) {
  const RunConfig cfg = run_config(o);
  const Dataset ds = load_ghds(o.data);
  check_dataset(ds, cfg.assemble);
  const Dataset train = split_part(ds, cfg.split, "train");
  ModelFile m;
  m.assemble = cfg.assemble;
  m.pipeline = fit_pipeline(train, cfg.pipeline);
  m.provenance.seed = cfg.seed;
  m.provenance.config_hash = config_hash(cfg);
  const fs::path dir = o.out;
  save_model(dir / "model.json", m);
  write_text(dir / "train_metrics.json", report_json(m.pipeline, train, "train"));
  std::ostringstream csv;
  write_projections_csv(csv, project_all(m.pipeline.subspace, train), train.labels);
  write_text(dir / "train_projections.csv", csv.str());
  out << "trained " << to_string(method_of(m.pipeline.subspace)) << " with "
      << feature_count(m.pipeline.subspace) << " features on " << train.size()
      << " samples; model written to " << (dir / "model.json").string() << "\n";
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const RunConfig cfg = run_config(o);
  const ModelFile m = load_model(o.model);
  const Dataset ds = load_ghds(o.data);
  check_dataset(ds, m.assemble);
  const Dataset part = split_part(ds, cfg.split, o.split);
  const std::string json = report_json(m.pipeline, part, o.split);
  if (o.out.empty()) {
    out << json;
  } else {
    write_text(o.out, json);
    out << "wrote " << o.split << " metrics to " << o.out << "\n";
  }
  return 0;
}

std::vector<std::size_t> parse_range(const std::string& text, const RunConfig& cfg) {
  std::size_t lo = cfg.sweep_min;
  std::size_t hi = cfg.sweep_max;
  if (!text.empty()) {
    const auto colon = text.find(':');
    try {
      std::size_t used = 0;
      if (colon == std::string::npos) {
        lo = hi = std::stoul(text, &used);
        require(used == text.size(), ErrorKind::Config, "");
      } else {
        lo = std::stoul(text.substr(0, colon), &used);
        require(used == colon, ErrorKind::Config, "");
        const auto rest = text.substr(colon + 1);
        hi = std::stoul(rest, &used);
        require(used == rest.size(), ErrorKind::Config, "");
      }
    } catch (const std::exception&) {
      fail(ErrorKind::Config, "--range must look like 1:10, got '" + text + "'");
    }
  }
  require(lo >= 1 && lo <= hi, ErrorKind::Config, "--range must satisfy 1 <= lo <= hi");
  std::vector<std::size_t> ps;
  for (std::size_t p = lo; p <= hi; ++p) ps.push_back(p);
  return ps;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  RunConfig cfg = run_config(o);
  if (!o.method.empty()) cfg.pipeline.subspace.method = method_from_string(o.method);
  const Dataset ds = load_ghds(o.data);
  check_dataset(ds, cfg.assemble);
  const auto ps = parse_range(o.range, cfg);
  const SweepResult r = feature_sweep(ds, cfg.pipeline, ps, cfg.split);
  std::ostringstream csv;
  write_curves_csv(csv, r);
  if (o.out.empty()) {
    out << csv.str();
  } else {
    write_text(o.out, csv.str());
  }
  out << "optimal_p=" << r.optimal_p << "\n";
  if (!r.train_trend_violations.empty()) {
    out << "train accuracy drops at P =";
    for (auto p : r.train_trend_violations) out << ' ' << p;
    out << "\n";
  }
  if (r.skipped_folds > 0) out << "skipped folds: " << r.skipped_folds << "\n";
  return 0;
}

int cmd_eigenmaps(const Options& o, std::ostream& out) {
  const ModelFile m = load_model(o.model);
  bool transpose = o.transpose;
  if (!o.config.empty()) transpose = transpose || run_config(o).transpose_maps;
  const fs::path dir = o.out;
  const std::size_t p = feature_count(m.pipeline.subspace);
  for (std::size_t k = 1; k <= p; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "map_%02zu.pgm", k);
    write_file_atomic(dir / name, encode_pgm(display_map(m.pipeline.subspace, k), transpose));
  }
  out << "wrote " << p << " maps to " << dir.string() << "\n";
  return 0;
}

int cmd_predict(const Options& o, std::ostream& out) {
  const ModelFile m = load_model(o.model);
  const RawObservation raw = load_ghrw(o.input);
  const AssembledInput in = assemble(raw, m.assemble);
  const Vector sample = round_to_f32(in.values);
  const Vector features = m.pipeline.features(sample);
  const Vector scores = ecoc_scores(m.pipeline.classifier, features);
  const int label =
      m.pipeline.classifier.classes[decode_hinge(m.pipeline.classifier.coding, scores)];
  ordered_json j;
  j["class"] = class_name(label);
  j["label"] = label;
  j["scores"] = scores;
  j["theta"] = interpretation_theta(features);
  j["features"] = features;
  out << j.dump() << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"ghm: vibration-based gear quality monitoring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  app.add_option("--threads", o.threads, "worker threads (default: GHM_THREADS or 1)");

  auto add_config = [&](CLI::App* c) {
    c->add_option("--config", o.config, "run configuration JSON");
    c->add_option("--seed", o.seed, "override the configuration seed");
  };

  auto* gen = app.add_subcommand("gen", "generate the synthetic corpus");
  add_config(gen);
  gen->add_option("--out", o.out, "output directory")->required();

  auto* feat = app.add_subcommand("featurize", "assemble spectrogram inputs into a GHDS file");
  add_config(feat);
  feat->add_option("--in", o.input, "directory holding manifest.json")->required();
  feat->add_option("--out", o.out, "output .ghds file")->required();

  auto* train = app.add_subcommand("train", "fit subspace learner and classifier");
  add_config(train);
  train->add_option("--data", o.data, "GHDS dataset")->required();
  train->add_option("--out", o.out, "output directory")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a model on a dataset split");
  add_config(eval);
  eval->add_option("--model", o.model, "model JSON")->required();
  eval->add_option("--data", o.data, "GHDS dataset")->required();
  eval->add_option("--split", o.split, "train, test or all")->check(CLI::IsMember({"train", "test", "all"}));
  eval->add_option("--out", o.out, "metrics JSON (default: standard output)");

  auto* sweep = app.add_subcommand("sweep", "accuracy as a function of the feature count");
  add_config(sweep);
  sweep->add_option("--data", o.data, "GHDS dataset")->required();
  sweep->add_option("--method", o.method, "pca, pca_lda or rumlda");
  sweep->add_option("--range", o.range, "feature counts as lo:hi");
  sweep->add_option("--out", o.out, "curves CSV (default: standard output)");

  auto* maps = app.add_subcommand("eigenmaps", "write component maps as PGM images");
  maps->add_option("--config", o.config, "run configuration JSON");
  maps->add_option("--model", o.model, "model JSON")->required();
  maps->add_option("--out", o.out, "output directory")->required();
  maps->add_flag("--transpose", o.transpose, "write bins x frames images");

  auto* predict = app.add_subcommand("predict", "classify one raw observation");
  predict->add_option("--model", o.model, "model JSON")->required();
  predict->add_option("--input", o.input, "GHRW observation")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (o.threads > 0) set_thread_count(o.threads);
    if (gen->parsed()) return cmd_gen(o, out);
    if (feat->parsed()) return cmd_featurize(o, out);
    if (train->parsed()) return cmd_train(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (maps->parsed()) return cmd_eigenmaps(o, out);
    if (predict->parsed()) return cmd_predict(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace ghm::cli

// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "checks.hpp"
#include "commands.hpp"
#include "corpus.hpp"
#include "ghm/config.hpp"
#include "ghm/evaluation.hpp"
#include "ghm/io.hpp"
#include "ghm/lda.hpp"
#include "ghm/model_io.hpp"
#include "ghm/parallel.hpp"
#include "ghm/pca.hpp"
#include "ghm/pipeline.hpp"
#include "ghm/rng.hpp"
#include "ghm/umlda.hpp"
#include "oracles.hpp"

using namespace ghm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------
// Shared corpus and sweeps (criteria 1-3, 6, 8).

struct MethodRun {
  SweepResult sweep;
  double test_accuracy = 0.0;
};

struct CorpusRuns {
  Dataset data;
  Partition part;
  MethodRun pca, lda, umlda;
  double seconds = 0.0;
};

PipelineConfig base_config(Method m) {
  PipelineConfig cfg;
  cfg.subspace.method = m;
  return cfg;
}

const CorpusRuns& corpus_runs() {
  static std::optional<CorpusRuns> runs;
  if (runs) return *runs;
  const auto t0 = std::chrono::steady_clock::now();
  CorpusRuns r;
  r.data = corpus::build(SynthConfig{}, corpus::reduced_assemble());
  const SplitSpec spec;
  r.part = split(r.data.labels, spec);
  auto run = [&](Method m, std::size_t hi) {
    std::vector<std::size_t> ps(hi);
    std::iota(ps.begin(), ps.end(), std::size_t{1});
    MethodRun out;
    out.sweep = feature_sweep(r.data, base_config(m), ps, spec);
    for (const auto& pt : out.sweep.points)
      if (pt.p == out.sweep.optimal_p) out.test_accuracy = pt.test_accuracy;
    return out;
  };
  r.pca = run(Method::Pca, 10);
  r.lda = run(Method::PcaLda, 10);
  r.umlda = run(Method::Rumlda, 8);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  runs = std::move(r);
  return *runs;
}

Dataset train_part(const CorpusRuns& r) { return r.data.subset(r.part.train); }
Dataset test_part(const CorpusRuns& r) { return r.data.subset(r.part.test); }

TrainedPipeline fit_at(const Dataset& train, Method m, std::size_t p) {
  PipelineConfig cfg = base_config(m);
  cfg.subspace.p = p;
  return fit_pipeline(train, cfg);
}

// ---------------------------------------------------------------------------

Outcome method_ordering() {
  const CorpusRuns& r = corpus_runs();
  const double u = r.umlda.test_accuracy, l = r.lda.test_accuracy, p = r.pca.test_accuracy;
  Outcome o;
  o.pass = u >= l && l >= p && u >= 0.99 && p >= 0.90 && r.seconds < 600.0;
  o.detail = "test accuracy rumlda=" + fmt("%.4f", u) + " pca_lda=" + fmt("%.4f", l) +
             " pca=" + fmt("%.4f", p) + ", corpus + sweeps " + fmt("%.1f", r.seconds) + " s";
  return o;
}

Outcome feature_parsimony() {
  const CorpusRuns& r = corpus_runs();
  Outcome o;
  o.pass = r.pca.sweep.optimal_p <= 8 && r.lda.sweep.optimal_p <= 4 && r.umlda.sweep.optimal_p <= 4;
  o.detail = "CV-optimal P pca=" + std::to_string(r.pca.sweep.optimal_p) +
             " pca_lda=" + std::to_string(r.lda.sweep.optimal_p) +
             " rumlda=" + std::to_string(r.umlda.sweep.optimal_p);
  return o;
}

Outcome minority_recall() {
  const CorpusRuns& r = corpus_runs();
  const Dataset test = test_part(r);
  const TrainedPipeline m = fit_at(train_part(r), Method::Rumlda, r.umlda.sweep.optimal_p);
  const auto pred = predict_all(m, test);
  const std::vector<int> classes{0, 1, 2, 3};
  const MetricsReport rep = confusion_and_f1(pred, test.labels, classes, "test");
  Outcome o;
  o.pass = rep.f1[3] >= 0.90;
  o.detail = "rumlda NOK3 test F1=" + fmt("%.4f", rep.f1[3]) + " (" +
             std::to_string(rep.confusion[3][3]) + "/" +
             std::to_string(std::accumulate(rep.confusion[3].begin(), rep.confusion[3].end(),
                                            std::size_t{0})) +
             " recalled)";
  return o;
}

Outcome eigensolvers() {
  Rng rng(2024);
  double worst_value = 0.0, worst_residual = 0.0, worst_trace = 0.0, worst_ortho = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 1 + static_cast<std::size_t>(inst % 8);
    const Matrix a = oracle::random_symmetric(rng, n, 1.0 + inst % 5);
    const double scale = std::max(1.0, frobenius_norm(a));
    const EigenPairs e = sym_eig(a);
    const Vector ref = oracle::eigenvalues(a);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      worst_value = std::max(worst_value, std::abs(e.values[k] - ref[k]) / scale);
      Vector r = multiply(a, e.vector(k));
      for (std::size_t i = 0; i < n; ++i) r[i] -= e.values[k] * e.vectors(i, k);
      worst_residual = std::max(worst_residual, norm(r) / scale);
      sum += e.values[k];
    }
    worst_trace = std::max(worst_trace, std::abs(sum - trace(a)) / scale);
    const Matrix g = multiply(transpose(e.vectors), e.vectors);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst_ortho = std::max(worst_ortho, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));

    const Matrix b = oracle::random_symmetric(rng, n);
    const Matrix w = oracle::random_spd(rng, n);
    const EigenPairs ge = gen_sym_eig(b, w, n);
    const Vector gref = oracle::generalized_eigenvalues(b, w);
    const double gscale = std::max(1.0, std::abs(gref.front()) + std::abs(gref.back()));
    const Matrix winv_b = oracle::matmul(oracle::inverse(w), b);
    double gsum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      worst_value = std::max(worst_value, std::abs(ge.values[k] - gref[k]) / gscale);
      const Vector u = ge.vector(k);
      Vector r = multiply(b, u);
      const Vector wu = multiply(w, u);
      for (std::size_t i = 0; i < n; ++i) r[i] -= ge.values[k] * wu[i];
      worst_residual = std::max(worst_residual, norm(r) / gscale);
      gsum += ge.values[k];
    }
    worst_trace = std::max(worst_trace, std::abs(gsum - trace(winv_b)) / gscale);
    const Matrix wg = multiply(transpose(ge.vectors), multiply(w, ge.vectors));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst_ortho = std::max(worst_ortho, std::abs(wg(i, j) - (i == j ? 1.0 : 0.0)));
  }
  Outcome o;
  o.pass = worst_value <= 1e-8 && worst_residual <= 1e-8 && worst_trace <= 1e-8 && worst_ortho <= 1e-8;
  o.detail = "200 sym + 200 generalized instances, max |value err| " + fmt("%.2e", worst_value) +
             ", residual " + fmt("%.2e", worst_residual) + ", trace " + fmt("%.2e", worst_trace) +
             ", orthonormality " + fmt("%.2e", worst_ortho);
  return o;
}

Outcome pca_dual_path() {
  Rng rng(77);
  double worst = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng.below(8));
    const std::size_t d = n + 1 + static_cast<std::size_t>(rng.below(30 - n));
    std::vector<Vector> xs(n, Vector(d));
    for (auto& x : xs)
      for (auto& v : x) v = rng.normal();
    const std::size_t p = n - 1;
    const PcaModel g = fit_pca(xs, p, {}, PcaSolver::Gram);
    const PcaModel dir = fit_pca(xs, p, {}, PcaSolver::Direct);
    for (std::size_t k = 0; k < p; ++k) {
      worst = std::max(worst, std::abs(g.eigenvalues[k] - dir.eigenvalues[k]) /
                                  std::max(1.0, dir.eigenvalues[0]));
      for (std::size_t j = 0; j < d; ++j)
        worst = std::max(worst, std::abs(g.components(k, j) - dir.components(k, j)));
    }
  }
  Outcome o;
  o.pass = worst <= 1e-8;
  o.detail = "20 datasets (N <= 10, D <= 30), max discrepancy " + fmt("%.2e", worst);
  return o;
}

double max_feature_correlation(const UmldaModel& m) {
  double worst = 0.0;
  for (std::size_t a = 0; a < m.count(); ++a)
    for (std::size_t b = a + 1; b < m.count(); ++b)
      worst = std::max(worst, std::abs(oracle::pearson(m.training_features.column(a),
                                                       m.training_features.column(b))));
  return worst;
}

double max_ascent_drop(const UmldaModel& m) {
  double worst = 0.0;
  for (const auto& d : m.diagnostics)
    for (std::size_t k = d.feasible_from + 1; k < d.objective.size(); ++k) {
      const double drop = (d.objective[k - 1] - d.objective[k]) / std::max(1.0, std::abs(d.objective[k - 1]));
      worst = std::max(worst, drop);
    }
  return worst;
}

Outcome umlda_contracts() {
  double corr = 0.0, drop = 0.0, min_cos = 1.0;
  std::size_t runs = 0;
  auto record = [&](const UmldaModel& m) {
    corr = std::max(corr, max_feature_correlation(m));
    drop = std::max(drop, max_ascent_drop(m));
    ++runs;
  };

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed * 101);
    Vector a(4 + seed % 3), b(5);
    for (auto& v : a) v = rng.normal();
    for (auto& v : b) v = rng.normal();
    const double na = norm(a), nb = norm(b);
    for (auto& v : a) v /= na;
    for (auto& v : b) v /= nb;
    const std::size_t cells = a.size() * b.size();
    std::vector<Tensor3> noisy, balanced;
    std::vector<int> noisy_labels, balanced_labels;
    for (int c = 0; c < 2; ++c) {
      for (int i = 0; i < 30; ++i) {
        Tensor3 t({a.size(), b.size(), 1});
        for (std::size_t r = 0; r < a.size(); ++r)
          for (std::size_t k = 0; k < b.size(); ++k) t(r, k, 0) = 0.1 * rng.normal() + 3.0 * c * a[r] * b[k];
        noisy.push_back(std::move(t));
        noisy_labels.push_back(c);
      }
      // ±0.1 on each entry in turn: within-class scatter is exactly isotropic,
      // so a and b are the Fisher-optimal mode vectors.
      for (std::size_t e = 0; e < 2 * cells; ++e) {
        Tensor3 t({a.size(), b.size(), 1});
        for (std::size_t r = 0; r < a.size(); ++r)
          for (std::size_t k = 0; k < b.size(); ++k) t(r, k, 0) = 3.0 * c * a[r] * b[k];
        t(e % cells / b.size(), e % b.size(), 0) += e < cells ? 0.1 : -0.1;
        balanced.push_back(std::move(t));
        balanced_labels.push_back(c);
      }
    }
    UmldaOptions opt;
    opt.p = 3;
    record(fit_rumlda(noisy, noisy_labels, opt));
    opt.p = 1;
    const UmldaModel m = fit_rumlda(balanced, balanced_labels, opt);
    record(m);
    min_cos = std::min(min_cos, std::abs(oracle::cosine(m.emps[0].modes[0], a)));
    min_cos = std::min(min_cos, std::abs(oracle::cosine(m.emps[0].modes[1], b)));
  }

  const CorpusRuns& r = corpus_runs();
  const Dataset train = train_part(r);
  const Dataset test = test_part(r);
  const std::size_t p = r.umlda.sweep.optimal_p;
  const TrainedPipeline merged = fit_at(train, Method::Rumlda, p);
  record(std::get<UmldaModel>(merged.subspace));
  record(std::get<UmldaModel>(fit_at(train, Method::Rumlda, 8).subspace));

  auto duplicate = [](const Dataset& ds) {
    Dataset out;
    out.mode = InputMode::Pair;
    out.shape = {ds.shape.frames, ds.shape.bins, 2};
    out.labels = ds.labels;
    for (const auto& s : ds.samples) {
      Vector v;
      v.reserve(2 * s.size());
      for (double x : s) {
        v.push_back(x);
        v.push_back(x);
      }
      out.samples.push_back(std::move(v));
    }
    return out;
  };
  const TrainedPipeline pair = fit_at(duplicate(train), Method::Rumlda, p);
  record(std::get<UmldaModel>(pair.subspace));
  const auto pred2 = predict_all(merged, test);
  const auto pred3 = predict_all(pair, duplicate(test));
  const bool same = pred2 == pred3;

  Outcome o;
  o.pass = corr <= 1e-6 && drop <= 1e-9 && min_cos >= 0.99 && same;
  o.detail = std::to_string(runs) + " fits: max |corr| " + fmt("%.2e", corr) + ", max ratio drop " +
             fmt("%.2e", drop) + ", planted |cos| >= " + fmt("%.4f", min_cos) +
             ", duplicated-channel predictions " + (same ? "identical" : "differ");
  return o;
}

Outcome svm_correctness() {
  Rng rng(99);
  double kkt = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 10 + static_cast<std::size_t>(rng.below(50));
    const std::size_t d = 2 + static_cast<std::size_t>(rng.below(4));
    std::vector<Vector> xs;
    std::vector<int> ys;
    for (std::size_t i = 0; i < n; ++i) {
      const int y = i % 2 == 0 ? 1 : -1;
      Vector x(d);
      for (auto& v : x) v = rng.normal() + 0.4 * y;
      xs.push_back(x);
      ys.push_back(y);
    }
    SvmOptions opt;
    opt.c = std::pow(10.0, rng.uniform(-1.0, 2.0));
    opt.scale = std::pow(10.0, rng.uniform(-0.5, 1.0));
    kkt = std::max(kkt, checks::kkt_violation(train_binary_svm(xs, ys, opt), xs, ys));
  }

  double dual_gap = 0.0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.below(5));
    std::vector<Vector> xs;
    std::vector<int> ys;
    for (std::size_t i = 0; i < n; ++i) {
      const int y = i % 2 == 0 ? 1 : -1;
      xs.push_back({rng.normal() + 0.5 * y, rng.normal()});
      ys.push_back(y);
    }
    SvmOptions opt;
    opt.c = std::pow(10.0, rng.uniform(-1.0, 1.5));
    opt.scale = std::pow(10.0, rng.uniform(-0.5, 0.5));
    const BinarySvm svm = train_binary_svm(xs, ys, opt);
    dual_gap = std::max(dual_gap, std::abs(checks::dual_value(svm, xs, ys) -
                                           oracle::svm_dual_max(xs, ys, opt.c, opt.scale)));
  }

  bool invariant = true;
  for (int t = 0; t < 10; ++t) {
    std::vector<Vector> xs;
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) {
      const int c = i % 4;
      xs.push_back({rng.normal() + c, rng.normal() - c});
      labels.push_back(c);
    }
    std::vector<std::size_t> perm(xs.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(perm));
    std::vector<Vector> pxs;
    std::vector<int> plabels;
    for (std::size_t i : perm) {
      pxs.push_back(xs[i]);
      plabels.push_back(labels[i]);
    }
    const EcocClassifier a = train_ecoc(xs, labels);
    const EcocClassifier b = train_ecoc(pxs, plabels);
    for (int q = 0; q < 50; ++q) {
      const Vector x{rng.uniform(-3.0, 6.0), rng.uniform(-6.0, 3.0)};
      if (predict_ecoc(a, x) != predict_ecoc(b, x) || ecoc_scores(a, x) != ecoc_scores(b, x))
        invariant = false;
    }
  }

  Outcome o;
  o.pass = kkt <= 1e-3 && dual_gap <= 1e-4 && invariant;
  o.detail = "max KKT violation " + fmt("%.2e", kkt) + " over 50 trainings, max dual gap " +
             fmt("%.2e", dual_gap) + " over 40 small problems, permutation " +
             (invariant ? "invariant" : "changes predictions");
  return o;
}

Outcome theta_normalization() {
  const CorpusRuns& r = corpus_runs();
  const Dataset train = train_part(r);
  const Dataset test = test_part(r);
  double worst = 0.0;
  for (auto [m, p] : {std::pair{Method::Pca, r.pca.sweep.optimal_p},
                      std::pair{Method::PcaLda, r.lda.sweep.optimal_p},
                      std::pair{Method::Rumlda, r.umlda.sweep.optimal_p}}) {
    const TrainedPipeline tp = fit_at(train, m, p);
    for (const auto& y : project_all(tp.subspace, test)) {
      const Vector th = interpretation_theta(y);
      worst = std::max(worst, std::abs(std::accumulate(th.begin(), th.end(), 0.0) - 1.0));
    }
  }

  // Planted patterns: class k carries ±a_k·e_k, so the component aligned with
  // e_k should dominate class k's mean θ.
  Rng rng(5);
  const std::size_t d = 30;
  const double amp[] = {10.0, 7.0, 4.0};
  std::vector<Vector> xs;
  std::vector<int> labels;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 20; ++i) {
      Vector x(d);
      for (auto& v : x) v = 0.2 * rng.normal();
      x[static_cast<std::size_t>(5 * c)] += (i % 2 == 0 ? 1.0 : -1.0) * amp[c];
      xs.push_back(x);
      labels.push_back(c);
    }
  const PcaModel pca = fit_pca(xs, 3);
  std::vector<Vector> ys;
  for (const auto& x : xs) ys.push_back(project_pca(pca, x));
  const ThetaReport rep = theta_report(ys, labels);
  bool planted = true;
  for (int c = 0; c < 3; ++c) {
    std::size_t aligned = 0;
    for (std::size_t k = 1; k < 3; ++k)
      if (std::abs(pca.components(k, 5 * c)) > std::abs(pca.components(aligned, 5 * c))) aligned = k;
    for (std::size_t k = 0; k < 3; ++k)
      if (k != aligned && rep.mean(c, k) >= rep.mean(c, aligned)) planted = false;
  }
  Outcome o;
  o.pass = worst <= 1e-10 && planted;
  o.detail = "max |sum theta - 1| " + fmt("%.2e", worst) + " on test projections, planted feature " +
             (planted ? "dominates its class" : "does not dominate");
  return o;
}

struct CliResult {
  int code = 0;
  std::string out;
};

CliResult ghm_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str() + err.str();
  return r;
}

Outcome reproducibility() {
  const fs::path root = fs::temp_directory_path() / "ghm_acceptance_repro";
  fs::remove_all(root);
  fs::create_directories(root);
  write_file_atomic(root / "run.json",
                    R"({"seed": 42, "stft": {"window_len": 64, "frames": 50, "bins": 64}, "method": "rumlda", "p": 3})");
  const std::string cfg = (root / "run.json").string();
  const std::size_t hw = std::max(2u, std::thread::hardware_concurrency());

  auto full_run = [&](const std::string& name, std::size_t threads) {
    const fs::path d = root / name;
    const std::string t = std::to_string(threads);
    bool ok = true;
    ok &= ghm_run({"--threads", t, "gen", "--config", cfg, "--out", (d / "raw").string()}).code == 0;
    ok &= ghm_run({"--threads", t, "featurize", "--config", cfg, "--in", (d / "raw").string(), "--out",
                   (d / "data.ghds").string()})
              .code == 0;
    ok &= ghm_run({"--threads", t, "train", "--config", cfg, "--data", (d / "data.ghds").string(),
                   "--out", (d / "model").string()})
              .code == 0;
    ok &= ghm_run({"--threads", t, "eval", "--config", cfg, "--model", (d / "model/model.json").string(),
                   "--data", (d / "data.ghds").string(), "--split", "test", "--out",
                   (d / "test_metrics.json").string()})
              .code == 0;
    ok &= ghm_run({"eigenmaps", "--model", (d / "model/model.json").string(), "--out",
                   (d / "maps").string()})
              .code == 0;
    return ok;
  };
  const bool ran = full_run("a", 1) && full_run("b", hw);

  std::size_t compared = 0;
  bool identical = ran;
  const std::vector<std::string> files{"data.ghds", "model/model.json", "model/train_metrics.json",
                                       "model/train_projections.csv", "test_metrics.json",
                                       "maps/map_01.pgm", "maps/map_02.pgm", "maps/map_03.pgm"};
  if (ran)
    for (const auto& f : files) {
      identical &= read_file(root / "a" / f) == read_file(root / "b" / f);
      ++compared;
    }

  bool round_trip = false;
  if (ran) {
    const RunConfig rc = load_run_config(root / "run.json");
    const Dataset ds = load_ghds(root / "a" / "data.ghds");
    const Dataset train = ds.subset(split(ds.labels, rc.split).train);
    const TrainedPipeline fresh = fit_pipeline(train, rc.pipeline);
    const std::string text = read_file(root / "a" / "model" / "model.json");
    const ModelFile loaded = decode_model(text);
    round_trip = encode_model(loaded) == text;
    for (const auto& s : ds.samples)
      round_trip = round_trip && loaded.pipeline.predict(s) == fresh.predict(s) &&
                   loaded.pipeline.scores(s) == fresh.scores(s);
  }
  fs::remove_all(root);

  Outcome o;
  o.pass = ran && identical && round_trip;
  o.detail = std::string(ran ? "" : "a CLI step failed; ") + std::to_string(compared) +
             " artifacts compared across runs with 1 and " + std::to_string(hw) + " threads: " +
             (identical ? "byte-identical" : "differ") + "; save/load predictions " +
             (round_trip ? "exact" : "differ");
  return o;
}

Outcome chance_level() {
  const CorpusRuns& r = corpus_runs();
  Dataset shuffled = r.data;
  Rng rng(4242);
  rng.shuffle(std::span<int>(shuffled.labels));
  SplitSpec spec;
  std::string detail = "shuffled-label CV accuracy";
  bool pass = true;
  for (Method m : {Method::Pca, Method::PcaLda, Method::Rumlda}) {
    PipelineConfig cfg = base_config(m);
    cfg.subspace.p = 3;
    const CvReport cv = kfold_cv(shuffled, spec, cfg);
    pass &= cv.mean_accuracy >= 0.15 && cv.mean_accuracy <= 0.35;
    detail += " " + to_string(m) + "=" + fmt("%.4f", cv.mean_accuracy);
  }
  return {pass, detail};
}

}  // namespace

int main() {
  set_thread_count(std::max(1u, std::thread::hardware_concurrency()));
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"method ordering", method_ordering},
      {"feature parsimony", feature_parsimony},
      {"imbalanced-class recall", minority_recall},
      {"eigensolver oracles", eigensolvers},
      {"PCA dual-path equivalence", pca_dual_path},
      {"R-UMLDA contracts", umlda_contracts},
      {"SVM correctness", svm_correctness},
      {"theta normalization", theta_normalization},
      {"reproducibility", reproducibility},
      {"chance-level sanity", chance_level},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu %s: %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

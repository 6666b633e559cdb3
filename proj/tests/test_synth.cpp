#include <algorithm>
#include <cmath>

#include "corpus.hpp"
#include "doctest.h"
#include "ghm/error.hpp"
#include "ghm/pipeline.hpp"
#include "ghm/spectrogram.hpp"
#include "ghm/synth.hpp"
#include "oracles.hpp"

using namespace ghm;

namespace {

// Frame-wise maximum of the one-sided 512-point magnitude spectrum.
Vector peak_spectrum(std::span<const double> signal) {
  const Spectrogram s = stft(signal, StftConfig{512, 200, 257});
  Vector out(s.cols(), 0.0);
  for (std::size_t f = 0; f < s.rows(); ++f)
    for (std::size_t b = 0; b < s.cols(); ++b) out[b] = std::max(out[b], s(f, b));
  return out;
}

double bin_of(double hz, const SynthConfig& cfg) { return hz * 512.0 / cfg.sample_rate; }

}  // namespace

TEST_CASE("observations are deterministic per (seed, class, index)") {
  SynthConfig cfg;
  const RawObservation a = gen_observation(2, cfg, 5);
  const RawObservation b = gen_observation(2, cfg, 5);
  CHECK(a.spindle == b.spindle);
  CHECK(a.tailstock == b.tailstock);
  CHECK(gen_observation(2, cfg, 6).spindle != a.spindle);
  cfg.seed = 43;
  CHECK(gen_observation(2, cfg, 5).spindle != a.spindle);
  CHECK(a.spindle.size() == 25000);
  CHECK_THROWS_AS(gen_observation(4, cfg, 0), Error);
}

TEST_CASE("samples are finite, clipped and f32-exact") {
  SynthConfig cfg;
  cfg.clip = 1.0;
  const RawObservation r = gen_observation(3, cfg, 0);
  for (std::size_t i = 0; i < r.spindle.size(); ++i) {
    CHECK(std::isfinite(r.spindle[i]));
    CHECK(std::abs(r.spindle[i]) <= 1.0);
    CHECK(std::abs(r.tailstock[i]) <= 1.0);
    CHECK(static_cast<double>(static_cast<float>(r.spindle[i])) == r.spindle[i]);
  }
}

TEST_CASE("dataset honours class counts") {
  SynthConfig cfg;
  CHECK(cfg.total() == 429);
  cfg.counts = {3, 2, 2, 1};
  const LabeledObservations d = gen_dataset(cfg);
  CHECK(d.labels == std::vector<int>{0, 0, 0, 1, 1, 2, 2, 3});
  CHECK(d.indices == std::vector<std::uint64_t>{0, 1, 2, 0, 1, 0, 1, 0});
  CHECK(d.observations[4].spindle == gen_observation(1, cfg, 1).spindle);
  cfg.counts = {0, 0, 0, 0};
  CHECK_THROWS_AS(gen_dataset(cfg), Error);
}

TEST_CASE("noise-free OK spectrum concentrates at the configured tones") {
  SynthConfig cfg;
  cfg.noise_sigma = 0.0;
  const RawObservation r = gen_observation(0, cfg, 0);
  const Vector spec = peak_spectrum(trim_observation(r.spindle, 0.0));
  std::vector<double> centers;
  for (const auto& h : cfg.harmonics) centers.push_back(bin_of(h.multiple * cfg.rotation_hz, cfg));
  centers.push_back(bin_of(cfg.spindle_tone_hz, cfg));
  double inside = 0.0, total = 0.0;
  for (std::size_t b = 0; b < spec.size(); ++b) {
    const double e = spec[b] * spec[b];
    total += e;
    for (double c : centers)
      if (std::abs(static_cast<double>(b) - c) <= 3.0) {
        inside += e;
        break;
      }
  }
  CHECK(inside / total >= 0.95);
  for (double c : centers) {
    const auto b = static_cast<std::size_t>(std::lround(c));
    double local = 0.0;
    for (std::size_t k = b - 1; k <= b + 1; ++k) local = std::max(local, spec[k]);
    CHECK(local >= 0.1 * *std::max_element(spec.begin(), spec.end()));
  }
}

TEST_CASE("NOK1 differs from its defect-free signal only around the ghost tone") {
  SynthConfig cfg;
  cfg.noise_sigma = 0.0;
  const ObservationParts p = gen_components(1, cfg, 3);
  Vector clean(p.base.size()), faulty(p.base.size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    clean[i] = p.base[i] + p.spindle_tone[i];
    faulty[i] = clean[i] + p.defect[i];
  }
  const Vector a = peak_spectrum(clean);
  const Vector b = peak_spectrum(faulty);
  const double ghost = bin_of(cfg.ghost_multiple * cfg.rotation_hz, cfg);
  double in_mask = 0.0, outside = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::abs(b[k] - a[k]);
    if (std::abs(static_cast<double>(k) - ghost) <= 4.0)
      in_mask = std::max(in_mask, d);
    else
      outside = std::max(outside, d);
  }
  CHECK(in_mask > 0.0);
  CHECK(outside <= 0.02 * in_mask);

  const ObservationParts ok = gen_components(0, cfg, 3);
  for (double v : ok.defect) CHECK(v == 0.0);
}

TEST_CASE("shared content is correlated across channels, private content is not") {
  SynthConfig cfg;
  for (int label : {1, 2, 3}) {
    const ObservationParts p = gen_components(label, cfg, 1);
    const RawObservation r = gen_observation(label, cfg, 1);
    Vector sp(r.spindle.size()), tl(r.spindle.size());
    for (std::size_t i = 0; i < sp.size(); ++i) {
      sp[i] = r.spindle[i] - p.spindle_tone[i] - p.spindle_noise[i];
      tl[i] = r.tailstock[i] - p.tailstock_tone[i] - p.tailstock_noise[i];
    }
    CHECK(oracle::pearson(sp, tl) > 0.5);
    CHECK(std::abs(oracle::pearson(p.spindle_noise, p.tailstock_noise)) < 0.2);
    CHECK(std::abs(oracle::pearson(p.spindle_tone, p.tailstock_tone)) < 0.2);
  }
}

TEST_CASE("class signatures are separable on the default corpus") {
  const Dataset ds = corpus::build(SynthConfig{}, corpus::reduced_assemble());
  CHECK(ds.size() == 429);
  CHECK(corpus::separability_ratio(ds) >= 3.0);
}

TEST_CASE("a model trained on one seed generalizes to another") {
  SynthConfig a;
  a.counts = {40, 40, 40, 20};
  SynthConfig b = a;
  b.seed = 1234;
  const auto asm_cfg = corpus::reduced_assemble();
  const Dataset train = corpus::build(a, asm_cfg);
  const Dataset test = corpus::build(b, asm_cfg);
  PipelineConfig cfg;
  cfg.subspace.method = Method::Rumlda;
  cfg.subspace.p = 3;
  const TrainedPipeline m = fit_pipeline(train, cfg);
  const auto pred = predict_all(m, test);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == test.labels[i];
  CHECK(static_cast<double>(correct) / static_cast<double>(pred.size()) >= 0.95);
}

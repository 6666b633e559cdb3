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

#include "ghm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ghm/error.hpp"
#include "ghm/parallel.hpp"
#include "ghm/rng.hpp"

namespace ghm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum Part : std::uint64_t {
  kBase = 1,
  kDefect = 2,
  kSpindleNoise = 3,
  kTailstockNoise = 4,
  kChannelTones = 5,
};

std::uint64_t stream(const SynthConfig& cfg, int label, std::uint64_t index, Part part) {
  return derive_seed(cfg.seed, {static_cast<std::uint64_t>(label), index, part});
}

// Piecewise-linear cycle envelope over normalized time u in [0, 1].
double phase_envelope(double u) {
  if (u < 0.40) return 1.6 - 0.4 * (u / 0.40);
  if (u < 0.85) return 1.2 - 0.2 * ((u - 0.40) / 0.45);
  return 1.0 - 0.3 * ((u - 0.85) / 0.15);
}

struct BaseParams {
  double rotation = 0.0;
  double severity = 1.0;
  double wobble_hz = 1.0;
  double wobble_phase = 0.0;
  std::vector<double> phases;
};

BaseParams base_params(const SynthConfig& cfg, int label, std::uint64_t index) {
  Rng rng(stream(cfg, label, index, kBase));
  BaseParams p;
  p.rotation = cfg.rotation_hz * (1.0 + rng.uniform(-0.003, 0.003));
  p.severity = rng.uniform(0.8, 1.2);
  p.wobble_hz = rng.uniform(0.5, 1.5);
  p.wobble_phase = rng.uniform(0.0, kTwoPi);
  for (std::size_t h = 0; h < cfg.harmonics.size(); ++h) p.phases.push_back(rng.uniform(0.0, kTwoPi));
  return p;
}

double envelope(const SynthConfig& cfg, const BaseParams& p, double t) {
  const double wobble = 1.0 + 0.05 * std::sin(kTwoPi * p.wobble_hz * t + p.wobble_phase);
  return p.severity * wobble * phase_envelope(t / cfg.duration);
}

Vector noise(const SynthConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  const double gain = rng.uniform(0.7, 1.3);
  Vector v(cfg.samples());
  for (double& x : v) x = cfg.noise_sigma * gain * rng.normal();
  return v;
}

}  // namespace

void SynthConfig::validate() const {
  require(sample_rate > 0.0 && std::isfinite(sample_rate), ErrorKind::Config,
          "sample_rate must be positive");
  require(duration > 0.0 && std::isfinite(duration), ErrorKind::Config,
          "duration must be positive");
  require(rotation_hz > 0.0, ErrorKind::Config, "rotation_hz must be positive");
  require(!harmonics.empty(), ErrorKind::Config, "at least one harmonic is required");
  require(noise_sigma >= 0.0, ErrorKind::Config, "noise_sigma must be non-negative");
  require(clip > 0.0, ErrorKind::Config, "clip must be positive");
  require(burst_tau > 0.0, ErrorKind::Config, "burst_tau must be positive");
  require(samples() >= 2, ErrorKind::Config, "duration is too short for the sample rate");
  const double nyquist = 0.5 * sample_rate;
  auto below_nyquist = [&](double hz, const std::string& what) {
    require(hz >= 0.0 && hz < nyquist, ErrorKind::Config,
            what + " frequency " + std::to_string(hz) + " Hz is outside [0, Nyquist)");
  };
  for (const auto& h : harmonics) below_nyquist(h.multiple * rotation_hz * 1.003, "harmonic");
  for (const auto& h : nok2_harmonics) below_nyquist(h.multiple * rotation_hz * 1.003, "NOK2 harmonic");
  below_nyquist(ghost_multiple * rotation_hz * 1.003, "ghost tone");
  below_nyquist(burst_hz, "burst");
  below_nyquist(spindle_tone_hz, "spindle tone");
  below_nyquist(tailstock_tone_hz, "tailstock tone");
  require(total() >= 1, ErrorKind::Config, "class counts sum to zero");
}

std::size_t SynthConfig::samples() const {
  return static_cast<std::size_t>(std::llround(sample_rate * duration));
}

std::size_t SynthConfig::total() const {
  std::size_t s = 0;
  for (std::size_t c : counts) s += c;
  return s;
}

ObservationParts gen_components(int label, const SynthConfig& cfg, std::uint64_t index) {
  require(label >= 0 && label < kQualityClassCount, ErrorKind::Config,
          "invalid class label " + std::to_string(label));
  cfg.validate();
  const std::size_t n = cfg.samples();
  const double dt = 1.0 / cfg.sample_rate;
  const BaseParams bp = base_params(cfg, label, index);

  ObservationParts out;
  out.base.assign(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    const double t = static_cast<double>(s) * dt;
    const double env = envelope(cfg, bp, t);
    double v = 0.0;
    for (std::size_t h = 0; h < cfg.harmonics.size(); ++h) {
      const auto& hm = cfg.harmonics[h];
      v += hm.amplitude * env * std::sin(kTwoPi * hm.multiple * bp.rotation * t + bp.phases[h]);
    }
    out.base[s] = v;
  }

  out.defect.assign(n, 0.0);
  Rng drng(stream(cfg, label, index, kDefect));
  const double strength = drng.uniform(0.8, 1.2);
  switch (static_cast<QualityClass>(label)) {
    case QualityClass::Ok:
      break;
    case QualityClass::Nok1: {
      const double phase = drng.uniform(0.0, kTwoPi);
      const double f = cfg.ghost_multiple * bp.rotation;
      for (std::size_t s = 0; s < n; ++s) {
        const double t = static_cast<double>(s) * dt;
        const double ramp = std::clamp((t / cfg.duration - 0.7) / 0.3, 0.0, 1.0);
        out.defect[s] = strength * cfg.ghost_amplitude * (0.25 + 0.75 * ramp) *
                        std::sin(kTwoPi * f * t + phase);
      }
      break;
    }
    case QualityClass::Nok2: {
      std::vector<double> phases;
      for (std::size_t h = 0; h < cfg.nok2_harmonics.size(); ++h)
        phases.push_back(drng.uniform(0.0, kTwoPi));
      for (std::size_t s = 0; s < n; ++s) {
        const double t = static_cast<double>(s) * dt;
        const double env = envelope(cfg, bp, t);
        double v = 0.0;
        for (std::size_t h = 0; h < cfg.nok2_harmonics.size(); ++h) {
          const auto& hm = cfg.nok2_harmonics[h];
          v += hm.amplitude * env * std::sin(kTwoPi * hm.multiple * bp.rotation * t + phases[h]);
        }
        out.defect[s] = strength * v;
      }
      break;
    }
    case QualityClass::Nok3: {
      const double period = 1.0 / bp.rotation;
      const double offset = drng.uniform(0.0, period);
      const double burst_phase = drng.uniform(0.0, kTwoPi);
      const double am_order = static_cast<double>(1 + drng.below(3));
      const double am_phase = drng.uniform(0.0, kTwoPi);
      std::size_t mesh = 0;
      for (std::size_t h = 1; h < cfg.harmonics.size(); ++h)
        if (cfg.harmonics[h].amplitude > cfg.harmonics[mesh].amplitude) mesh = h;
      const auto& mh = cfg.harmonics[mesh];
      for (std::size_t s = 0; s < n; ++s) {
        const double t = static_cast<double>(s) * dt;
        double v = 0.0;
        if (t >= offset) {
          const double since = std::fmod(t - offset, period);
          v += cfg.burst_amplitude * std::exp(-since / cfg.burst_tau) *
               std::sin(kTwoPi * cfg.burst_hz * since + burst_phase);
        }
        const double carrier = mh.amplitude * envelope(cfg, bp, t) *
                               std::sin(kTwoPi * mh.multiple * bp.rotation * t + bp.phases[mesh]);
        v += cfg.am_depth * std::cos(kTwoPi * am_order * bp.rotation * t + am_phase) * carrier;
        out.defect[s] = strength * v;
      }
      break;
    }
  }

  Rng trng(stream(cfg, label, index, kChannelTones));
  const double sp_phase = trng.uniform(0.0, kTwoPi);
  const double tl_phase = trng.uniform(0.0, kTwoPi);
  out.spindle_tone.assign(n, 0.0);
  out.tailstock_tone.assign(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    const double t = static_cast<double>(s) * dt;
    out.spindle_tone[s] =
        cfg.channel_tone_amplitude * std::sin(kTwoPi * cfg.spindle_tone_hz * t + sp_phase);
    out.tailstock_tone[s] =
        cfg.channel_tone_amplitude * std::sin(kTwoPi * cfg.tailstock_tone_hz * t + tl_phase);
  }

  out.spindle_noise = noise(cfg, stream(cfg, label, index, kSpindleNoise));
  out.tailstock_noise = noise(cfg, stream(cfg, label, index, kTailstockNoise));
  return out;
}

RawObservation gen_observation(int label, const SynthConfig& cfg, std::uint64_t index) {
  const ObservationParts p = gen_components(label, cfg, index);
  const std::size_t n = p.base.size();
  RawObservation raw;
  raw.sample_rate = cfg.sample_rate;
  raw.spindle.resize(n);
  raw.tailstock.resize(n);
  auto finish = [&](double x) {
    return static_cast<double>(static_cast<float>(std::clamp(x, -cfg.clip, cfg.clip)));
  };
  for (std::size_t s = 0; s < n; ++s) {
    const double shared = p.base[s] + p.defect[s];
    raw.spindle[s] = finish(shared + p.spindle_tone[s] + p.spindle_noise[s]);
    raw.tailstock[s] =
        finish(cfg.tailstock_gain * shared + p.tailstock_tone[s] + p.tailstock_noise[s]);
  }
  return raw;
}

LabeledObservations gen_dataset(const SynthConfig& cfg) {
  cfg.validate();
  LabeledObservations out;
  for (int c = 0; c < kQualityClassCount; ++c) {
    for (std::size_t i = 0; i < cfg.counts[static_cast<std::size_t>(c)]; ++i) {
      out.labels.push_back(c);
      out.indices.push_back(i);
    }
  }
  out.observations.resize(out.labels.size());
  parallel_for(out.labels.size(), [&](std::size_t k) {
    out.observations[k] = gen_observation(out.labels[k], cfg, out.indices[k]);
  });
  return out;
}

Dataset assemble_dataset(std::span<const RawObservation> observations, std::span<const int> labels,
                         const AssembleConfig& cfg) {
  require(observations.size() == labels.size(), ErrorKind::Dimension,
          "one label per observation required");
  Dataset ds;
  ds.mode = cfg.mode;
  ds.shape = cfg.shape();
  ds.labels.assign(labels.begin(), labels.end());
  ds.samples.resize(observations.size());
  parallel_for(observations.size(),
               [&](std::size_t i) { ds.samples[i] = assemble(observations[i], cfg).values; });
  return ds;
}

}  // namespace ghm

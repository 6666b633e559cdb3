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

#ifndef GHM_SYNTH_HPP
#define GHM_SYNTH_HPP

// Synthetic two-channel honing vibration generator. The signals are labeled
// synthetic everywhere they are written; they exist to exercise the pipeline
// with four classes whose time-frequency signatures differ in known ways.
//
// Every observation is a sum of independently seeded parts:
//   spindle   = base + defect + spindle tone + spindle noise
//   tailstock = g·(base + defect) + tailstock tone + tailstock noise
// base:   harmonics of the workpiece rotation under a piecewise-linear
//         roughing / finishing / spark-out envelope
// defect: OK none; NOK1 non-harmonic ghost tone growing over the final 30%;
//         NOK2 extra low-order harmonics throughout; NOK3 one damped
//         high-frequency burst per revolution plus amplitude modulation of
//         the mesh tone
// Streams: derive_seed(seed, {class, index, part}), so an observation never
// depends on generation order or thread count.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ghm/dataset.hpp"
#include "ghm/spectrogram.hpp"

namespace ghm {

struct Harmonic {
  double multiple = 1.0;
  double amplitude = 1.0;
  bool operator==(const Harmonic&) const = default;
};

struct SynthConfig {
  double sample_rate = 25000.0;
  double duration = 1.0;
  double rotation_hz = 150.0;
  std::vector<Harmonic> harmonics{{1.0, 0.3}, {20.0, 1.0}, {40.0, 0.5}};
  double noise_sigma = 0.15;
  double clip = 20.0;

  double tailstock_gain = 0.6;
  double spindle_tone_hz = 5200.0;
  double tailstock_tone_hz = 2200.0;
  double channel_tone_amplitude = 0.3;

  double ghost_multiple = 7.37;
  double ghost_amplitude = 1.5;
  std::vector<Harmonic> nok2_harmonics{{2.0, 1.0}, {3.0, 1.0}};
  double burst_hz = 9000.0;
  double burst_tau = 1.5e-3;
  double burst_amplitude = 3.5;
  double am_depth = 0.3;

  std::array<std::size_t, kQualityClassCount> counts{150, 130, 110, 39};
  std::uint64_t seed = 42;

  void validate() const;
  std::size_t samples() const;
  std::size_t total() const;
  bool operator==(const SynthConfig&) const = default;
};

/// The separately seeded parts of one observation, before clipping.
struct ObservationParts {
  Vector base;
  Vector defect;
  Vector spindle_tone;
  Vector tailstock_tone;
  Vector spindle_noise;
  Vector tailstock_noise;
};

ObservationParts gen_components(int label, const SynthConfig& cfg, std::uint64_t index);

/// Assembled, clipped channels; every sample is exactly representable as f32.
RawObservation gen_observation(int label, const SynthConfig& cfg, std::uint64_t index);

struct LabeledObservations {
  std::vector<RawObservation> observations;
  std::vector<int> labels;
  std::vector<std::uint64_t> indices;  // per-class index of each observation
};

/// Class-major order: all OK observations, then NOK1, NOK2, NOK3.
LabeledObservations gen_dataset(const SynthConfig& cfg);

/// Runs `assemble` on every observation.
Dataset assemble_dataset(std::span<const RawObservation> observations, std::span<const int> labels,
                         const AssembleConfig& cfg);

}  // namespace ghm

#endif  // GHM_SYNTH_HPP

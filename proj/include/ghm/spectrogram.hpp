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

#ifndef GHM_SPECTROGRAM_HPP
#define GHM_SPECTROGRAM_HPP

#include <cstddef>
#include <span>

#include "ghm/linalg.hpp"

namespace ghm {

/// One machining cycle as recorded by the spindle and tailstock accelerometers.
struct RawObservation {
  Vector spindle;
  Vector tailstock;
  double sample_rate = 25000.0;

  void validate() const;
};

enum class Taper { Hamming };

struct StftConfig {
  std::size_t window_len = 512;
  std::size_t frames = 200;
  /// Either window_len (full two-sided magnitude spectrum) or window_len/2 + 1.
  std::size_t bins = 512;
  Taper window = Taper::Hamming;

  void validate() const;
  bool two_sided() const { return bins == window_len; }
  bool operator==(const StftConfig&) const = default;
};

/// Magnitude spectrogram, frames × bins, all entries non-negative.
using Spectrogram = Matrix;

/// 0.54 − 0.46·cos(2πn/(L−1)).
Vector hamming_window(std::size_t length);

/// Hop between frame starts for a signal of `length` samples.
std::size_t stft_hop(std::size_t length, const StftConfig& cfg);

Spectrogram stft(std::span<const double> signal, const StftConfig& cfg);

/// Drops the leading `fraction` of the cycle (the roughing phase). The retained
/// length is rounded up.
Vector trim_observation(std::span<const double> signal, double fraction = 0.40);

}  // namespace ghm

#endif  // GHM_SPECTROGRAM_HPP

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

#include "ghm/spectrogram.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "ghm/error.hpp"

namespace ghm {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(std::size_t n) : n_(n) {
    in_ = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    out_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(out_);
    fftw_free(in_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::span<double> input() { return {in_, n_}; }
  void execute() { fftw_execute(plan_); }
  double magnitude(std::size_t k) const {
    const double re = out_[k][0];
    const double im = out_[k][1];
    return std::sqrt(re * re + im * im);
  }

 private:
  std::size_t n_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace

void RawObservation::validate() const {
  require(sample_rate > 0.0 && std::isfinite(sample_rate), ErrorKind::Config,
          "sample rate must be positive");
  require(spindle.size() == tailstock.size(), ErrorKind::Dimension,
          "spindle and tailstock channels differ in length");
  require(all_finite(spindle) && all_finite(tailstock), ErrorKind::Numeric,
          "observation contains non-finite samples");
}

void StftConfig::validate() const {
  require(window_len >= 2, ErrorKind::Config, "stft window_len must be >= 2");
  require(frames >= 2, ErrorKind::Config, "stft frames must be >= 2");
  require(bins == window_len || bins == window_len / 2 + 1, ErrorKind::Config,
          "stft bins must equal window_len or window_len/2 + 1");
}

Vector hamming_window(std::size_t length) {
  Vector w(length);
  if (length == 1) {
    w[0] = 1.0;
    return w;
  }
  const double denom = static_cast<double>(length - 1);
  for (std::size_t n = 0; n < length; ++n)
    w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / denom);
  return w;
}

std::size_t stft_hop(std::size_t length, const StftConfig& cfg) {
  cfg.validate();
  require(length >= cfg.window_len, ErrorKind::Config,
          "signal of " + std::to_string(length) + " samples is shorter than the " +
              std::to_string(cfg.window_len) + "-sample window");
  const std::size_t hop = (length - cfg.window_len) / (cfg.frames - 1);
  require(hop >= 1, ErrorKind::Config,
          "signal of " + std::to_string(length) + " samples cannot hold " +
              std::to_string(cfg.frames) + " frames");
  return hop;
}

Spectrogram stft(std::span<const double> signal, const StftConfig& cfg) {
  const std::size_t hop = stft_hop(signal.size(), cfg);
  require(all_finite(signal), ErrorKind::Numeric, "stft input has non-finite samples");
  const std::size_t len = cfg.window_len;
  const Vector window = hamming_window(len);
  const std::size_t half = len / 2 + 1;

  RealFft fft(len);
  Spectrogram out(cfg.frames, cfg.bins);
  for (std::size_t f = 0; f < cfg.frames; ++f) {
    auto in = fft.input();
    const std::size_t start = f * hop;
    for (std::size_t n = 0; n < len; ++n) in[n] = window[n] * signal[start + n];
    fft.execute();
    auto row = out.row(f);
    for (std::size_t k = 0; k < half; ++k) row[k] = fft.magnitude(k);
    // Two-sided: mirror the conjugate-symmetric half.
    for (std::size_t k = half; k < cfg.bins; ++k) row[k] = row[len - k];
  }
  return out;
}

Vector trim_observation(std::span<const double> signal, double fraction) {
  require(fraction >= 0.0 && fraction < 1.0, ErrorKind::Config,
          "trim fraction must lie in [0, 1)");
  const auto dropped =
      static_cast<std::size_t>(std::floor(fraction * static_cast<double>(signal.size())));
  return Vector(signal.begin() + static_cast<std::ptrdiff_t>(dropped), signal.end());
}

}  // namespace ghm

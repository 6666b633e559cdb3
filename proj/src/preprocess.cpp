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

#include "ghm/preprocess.hpp"

#include <algorithm>

#include "ghm/error.hpp"

namespace ghm {

std::string to_string(InputMode mode) {
  switch (mode) {
    case InputMode::Vector: return "vector";
    case InputMode::Merged: return "merged";
    case InputMode::Pair: return "pair";
  }
  return "unknown";
}

InputMode input_mode_from_string(const std::string& name) {
  if (name == "vector") return InputMode::Vector;
  if (name == "merged") return InputMode::Merged;
  if (name == "pair") return InputMode::Pair;
  fail(ErrorKind::Config, "unknown input mode '" + name + "' (expected vector, merged or pair)");
}

SampleShape AssembleConfig::shape() const {
  return {stft.frames, stft.bins, mode == InputMode::Pair ? std::size_t{2} : std::size_t{1}};
}

Matrix normalize_gray(const Matrix& s) {
  require(all_finite(s.values()), ErrorKind::Numeric, "cannot normalize non-finite map");
  const auto [lo, hi] = std::minmax_element(s.values().begin(), s.values().end());
  const double min = *lo;
  const double range = *hi - min;
  Matrix out(s.rows(), s.cols());
  if (range <= 0.0) return out;
  auto o = out.values();
  auto in = s.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = 255.0 * ((in[i] - min) / range);
  return out;
}

Matrix merge_hadamard(const Matrix& spindle, const Matrix& tailstock) {
  require(spindle.rows() == tailstock.rows() && spindle.cols() == tailstock.cols(),
          ErrorKind::Dimension, "spindle and tailstock maps differ in size");
  Matrix product(spindle.rows(), spindle.cols());
  auto p = product.values();
  auto a = spindle.values();
  auto b = tailstock.values();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a[i] * b[i];
  return normalize_gray(product);
}

Vector flatten(const Matrix& m) { return Vector(m.values().begin(), m.values().end()); }

Matrix reshape(std::span<const double> values, std::size_t rows, std::size_t cols) {
  require(values.size() == rows * cols, ErrorKind::Dimension, "reshape size mismatch");
  return Matrix(rows, cols, Vector(values.begin(), values.end()));
}

AssembledInput assemble(const RawObservation& raw, const AssembleConfig& cfg) {
  raw.validate();
  cfg.stft.validate();
  const Matrix sp = normalize_gray(stft(trim_observation(raw.spindle, cfg.trim_fraction), cfg.stft));
  const Matrix tl =
      normalize_gray(stft(trim_observation(raw.tailstock, cfg.trim_fraction), cfg.stft));

  AssembledInput out{cfg.mode, cfg.shape(), {}};
  if (cfg.mode == InputMode::Pair) {
    Tensor3 t(out.shape.dims());
    for (std::size_t i = 0; i < sp.rows(); ++i)
      for (std::size_t j = 0; j < sp.cols(); ++j) {
        t(i, j, 0) = sp(i, j);
        t(i, j, 1) = tl(i, j);
      }
    out.values.assign(t.values().begin(), t.values().end());
  } else {
    out.values = flatten(merge_hadamard(sp, tl));
  }
  return out;
}

}  // namespace ghm

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

#ifndef GHM_PREPROCESS_HPP
#define GHM_PREPROCESS_HPP

// Grayscale normalization, spindle/tailstock fusion and assembly of learner
// inputs from raw observations.

#include <cstdint>
#include <span>
#include <string>

#include "ghm/linalg.hpp"
#include "ghm/spectrogram.hpp"

namespace ghm {

enum class InputMode : std::uint32_t {
  Vector = 0,  // flattened merged map
  Merged = 1,  // merged map kept as a w × b matrix
  Pair = 2,    // w × b × 2 stack of the normalized spindle/tailstock maps
};

std::string to_string(InputMode mode);
InputMode input_mode_from_string(const std::string& name);

/// Shape of one learner input: frames × bins × channels.
struct SampleShape {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::size_t channels = 1;

  std::size_t size() const { return frames * bins * channels; }
  Tensor3::Dims dims() const { return {frames, bins, channels}; }
  bool operator==(const SampleShape&) const = default;
};

struct AssembleConfig {
  StftConfig stft;
  double trim_fraction = 0.40;
  InputMode mode = InputMode::Merged;

  SampleShape shape() const;
  bool operator==(const AssembleConfig&) const = default;
};

/// Affine map onto [0, 255]; a constant input maps to all zeros.
Matrix normalize_gray(const Matrix& s);

/// Elementwise product of two normalized maps, rescaled onto [0, 255].
Matrix merge_hadamard(const Matrix& spindle, const Matrix& tailstock);

/// Row-major (frame-major) concatenation.
Vector flatten(const Matrix& m);
Matrix reshape(std::span<const double> values, std::size_t rows, std::size_t cols);

/// Learner input in the storage layout of Tensor3 (channel index fastest).
struct AssembledInput {
  InputMode mode = InputMode::Merged;
  SampleShape shape;
  Vector values;

  Tensor3 tensor() const { return Tensor3(shape.dims(), values); }
};

AssembledInput assemble(const RawObservation& raw, const AssembleConfig& cfg);

}  // namespace ghm

#endif  // GHM_PREPROCESS_HPP

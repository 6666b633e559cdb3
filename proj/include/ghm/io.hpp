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

#ifndef GHM_IO_HPP
#define GHM_IO_HPP

// Binary containers, PGM images and file helpers.
//
// GHRW (one raw observation), little-endian:
//   "GHRW" | u32 channels (=2) | u32 samples | f64 sample rate |
//   f32[samples] spindle | f32[samples] tailstock
// GHDS (assembled dataset), little-endian:
//   "GHDS" | u32 count | u32 mode | u32 frames | u32 bins | u32 channels |
//   count × (u8 label | f32[frames·bins·channels] payload)

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "ghm/dataset.hpp"
#include "ghm/spectrogram.hpp"

namespace ghm {

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_u64(std::uint64_t v);

/// Exact text form of a double ("%a") and its inverse.
std::string hex_double(double v);
double parse_hex_double(const std::string& text);

/// Rounds every value to the nearest f32, the precision stored on disk.
Vector round_to_f32(std::span<const double> values);

std::string encode_ghrw(const RawObservation& raw);
RawObservation decode_ghrw(std::string_view bytes);
void save_ghrw(const std::filesystem::path& path, const RawObservation& raw);
RawObservation load_ghrw(const std::filesystem::path& path);

std::string encode_ghds(const Dataset& ds);
Dataset decode_ghds(std::string_view bytes);
void save_ghds(const std::filesystem::path& path, const Dataset& ds);
Dataset load_ghds(const std::filesystem::path& path);

/// Binary 8-bit PGM of a [0, 255] map, rounded half up. With `transpose`
/// the image is cols × rows tall.
std::string encode_pgm(const Matrix& gray, bool transpose = false);

}  // namespace ghm

#endif  // GHM_IO_HPP

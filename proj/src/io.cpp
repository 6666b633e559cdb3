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

#include "ghm/io.hpp"

#include <algorithm>
#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ghm/error.hpp"

namespace ghm {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    require(static_cast<bool>(out), ErrorKind::Io, "write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::Io, "cannot move output into place at " + path.string());
  }
}

std::string read_file(const fs::path& path) {
  std::error_code ec;
  require(fs::is_regular_file(path, ec), ErrorKind::MissingInput,
          "input file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::MissingInput, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_u64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string hex_double(double v) {
  require(std::isfinite(v), ErrorKind::Numeric, "cannot serialize a non-finite value");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_hex_double(const std::string& text) {
  require(!text.empty(), ErrorKind::CorruptData, "empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  require(errno == 0 && end == text.c_str() + text.size() && std::isfinite(v),
          ErrorKind::CorruptData, "malformed numeric field '" + text + "'");
  return v;
}

Vector round_to_f32(std::span<const double> values) {
  Vector out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i] = static_cast<double>(static_cast<float>(values[i]));
  return out;
}

namespace {

class Writer {
 public:
  void bytes(std::string_view s) { buf_.append(s); }
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) u8(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void u64(std::uint64_t v) {
    for (int k = 0; k < 8; ++k) u8(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void f32(double v) { u32(std::bit_cast<std::uint32_t>(static_cast<float>(v))); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(std::string_view data, const char* what) : data_(data), what_(what) {}

  void need(std::size_t n) const {
    require(data_.size() - pos_ >= n, ErrorKind::CorruptData,
            std::string(what_) + " container is truncated");
  }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(u8()) << (8 * k);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(u8()) << (8 * k);
    return v;
  }
  double f32() { return static_cast<double>(std::bit_cast<float>(u32())); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  std::string_view data_;
  const char* what_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_ghrw(const RawObservation& raw) {
  raw.validate();
  require(raw.spindle.size() <= 0xffffffffULL, ErrorKind::Config, "observation too long for GHRW");
  Writer w;
  w.bytes("GHRW");
  w.u32(2);
  w.u32(static_cast<std::uint32_t>(raw.spindle.size()));
  w.f64(raw.sample_rate);
  for (double v : raw.spindle) w.f32(v);
  for (double v : raw.tailstock) w.f32(v);
  return w.take();
}

RawObservation decode_ghrw(std::string_view bytes) {
  Reader r(bytes, "GHRW");
  require(r.remaining() >= 4 && r.bytes(4) == "GHRW", ErrorKind::CorruptData,
          "not a GHRW file (bad magic)");
  const std::uint32_t channels = r.u32();
  require(channels == 2, ErrorKind::CorruptData,
          "GHRW channel count must be 2, found " + std::to_string(channels));
  const std::uint32_t n = r.u32();
  RawObservation raw;
  raw.sample_rate = r.f64();
  require(raw.sample_rate > 0.0 && std::isfinite(raw.sample_rate), ErrorKind::CorruptData,
          "GHRW sample rate is invalid");
  require(r.remaining() == 8ULL * n, ErrorKind::CorruptData,
          "GHRW payload size does not match its header");
  raw.spindle.resize(n);
  raw.tailstock.resize(n);
  for (auto& v : raw.spindle) v = r.f32();
  for (auto& v : raw.tailstock) v = r.f32();
  require(all_finite(raw.spindle) && all_finite(raw.tailstock), ErrorKind::CorruptData,
          "GHRW contains non-finite samples");
  return raw;
}

void save_ghrw(const fs::path& path, const RawObservation& raw) {
  write_file_atomic(path, encode_ghrw(raw));
}

RawObservation load_ghrw(const fs::path& path) { return decode_ghrw(read_file(path)); }

std::string encode_ghds(const Dataset& ds) {
  ds.validate();
  Writer w;
  w.bytes("GHDS");
  w.u32(static_cast<std::uint32_t>(ds.size()));
  w.u32(static_cast<std::uint32_t>(ds.mode));
  w.u32(static_cast<std::uint32_t>(ds.shape.frames));
  w.u32(static_cast<std::uint32_t>(ds.shape.bins));
  w.u32(static_cast<std::uint32_t>(ds.shape.channels));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    require(ds.labels[i] >= 0 && ds.labels[i] < 256, ErrorKind::Config,
            "GHDS labels must fit in one byte");
    w.u8(static_cast<std::uint8_t>(ds.labels[i]));
    for (double v : ds.samples[i]) w.f32(v);
  }
  return w.take();
}

Dataset decode_ghds(std::string_view bytes) {
  Reader r(bytes, "GHDS");
  require(r.remaining() >= 4 && r.bytes(4) == "GHDS", ErrorKind::CorruptData,
          "not a GHDS file (bad magic)");
  Dataset ds;
  const std::uint32_t count = r.u32();
  const std::uint32_t mode = r.u32();
  require(mode <= static_cast<std::uint32_t>(InputMode::Pair), ErrorKind::CorruptData,
          "GHDS mode tag " + std::to_string(mode) + " is unknown");
  ds.mode = static_cast<InputMode>(mode);
  ds.shape.frames = r.u32();
  ds.shape.bins = r.u32();
  ds.shape.channels = r.u32();
  const std::size_t d = ds.shape.size();
  require(d >= 1, ErrorKind::CorruptData, "GHDS sample shape is empty");
  require(r.remaining() == static_cast<std::size_t>(count) * (1 + 4 * d), ErrorKind::CorruptData,
          "GHDS payload size does not match its header");
  ds.samples.resize(count);
  ds.labels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    ds.labels[i] = r.u8();
    ds.samples[i].resize(d);
    for (auto& v : ds.samples[i]) v = r.f32();
    require(all_finite(ds.samples[i]), ErrorKind::CorruptData, "GHDS contains non-finite values");
  }
  return ds;
}

void save_ghds(const fs::path& path, const Dataset& ds) { write_file_atomic(path, encode_ghds(ds)); }

Dataset load_ghds(const fs::path& path) { return decode_ghds(read_file(path)); }

std::string encode_pgm(const Matrix& gray, bool transpose) {
  const std::size_t h = transpose ? gray.cols() : gray.rows();
  const std::size_t w = transpose ? gray.rows() : gray.cols();
  std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double v = transpose ? gray(x, y) : gray(y, x);
      const double q = std::clamp(std::floor(v + 0.5), 0.0, 255.0);
      out.push_back(static_cast<char>(static_cast<unsigned char>(q)));
    }
  }
  return out;
}

}  // namespace ghm

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

#include "ghm/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

#include "ghm/error.hpp"
#include "ghm/io.hpp"

namespace ghm {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::size_t line_at(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

class Section {
 public:
  Section(const json& obj, std::string path, const std::string& text, const std::string& source)
      : obj_(obj), path_(std::move(path)), text_(text), source_(source) {}

  [[noreturn]] void error(const std::string& key, const std::string& msg) const {
    const std::string quoted = "\"" + key + "\"";
    const auto pos = text_.find(quoted);
    std::string where = source_;
    if (pos != std::string::npos) where += ":" + std::to_string(line_at(text_, pos));
    fail(ErrorKind::Config, where + ": " + qualified(key) + ": " + msg);
  }

  void allow(std::initializer_list<const char*> keys) const {
    require(obj_.is_object(), ErrorKind::Config, source_ + ": " + path_ + " must be an object");
    const std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : obj_.items())
      if (!ok.count(k)) error(k, "unknown key");
  }

  bool has(const char* key) const { return obj_.contains(key); }
  const json& at(const char* key) const { return obj_.at(key); }

  void number(const char* key, double& out) const {
    if (!has(key)) return;
    const json& v = at(key);
    if (!v.is_number()) error(key, "expected a number");
    out = v.get<double>();
    if (!std::isfinite(out)) error(key, "expected a finite number");
  }

  void count(const char* key, std::size_t& out) const {
    if (!has(key)) return;
    const json& v = at(key);
    if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)))
      error(key, "expected a non-negative integer");
    out = v.get<std::size_t>();
  }

  void u64(const char* key, std::uint64_t& out) const {
    if (!has(key)) return;
    const json& v = at(key);
    if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)))
      error(key, "expected a non-negative integer");
    out = v.get<std::uint64_t>();
  }

  void flag(const char* key, bool& out) const {
    if (!has(key)) return;
    if (!at(key).is_boolean()) error(key, "expected true or false");
    out = at(key).get<bool>();
  }

  bool text(const char* key, std::string& out) const {
    if (!has(key)) return false;
    if (!at(key).is_string()) error(key, "expected a string");
    out = at(key).get<std::string>();
    return true;
  }

  void harmonics(const char* key, std::vector<Harmonic>& out) const {
    if (!has(key)) return;
    const json& v = at(key);
    if (!v.is_array()) error(key, "expected an array of [multiple, amplitude] pairs");
    out.clear();
    for (const auto& h : v) {
      if (!h.is_array() || h.size() != 2 || !h[0].is_number() || !h[1].is_number())
        error(key, "expected an array of [multiple, amplitude] pairs");
      out.push_back({h[0].get<double>(), h[1].get<double>()});
    }
  }

  Section sub(const char* key) const {
    const json& v = at(key);
    if (!v.is_object()) error(key, "expected an object");
    return Section(v, qualified(key), text_, source_);
  }

 private:
  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& obj_;
  std::string path_;
  const std::string& text_;
  const std::string& source_;
};

}  // namespace

void RunConfig::set_seed(std::uint64_t s) {
  seed = s;
  synth.seed = s;
  split.seed = s;
}

void RunConfig::validate() const {
  synth.validate();
  assemble.stft.validate();
  require(assemble.trim_fraction >= 0.0 && assemble.trim_fraction < 1.0, ErrorKind::Config,
          "trim_fraction must lie in [0, 1)");
  const std::size_t n = synth.samples();
  const auto kept =
      n - static_cast<std::size_t>(std::floor(assemble.trim_fraction * static_cast<double>(n)));
  stft_hop(kept, assemble.stft);
  split.validate();
  const auto& s = pipeline.subspace;
  require(s.p >= 1, ErrorKind::Config, "p must be at least 1");
  require(s.gamma >= 0.0, ErrorKind::Config, "gamma must be non-negative");
  require(s.max_iter >= 1, ErrorKind::Config, "max_iter must be at least 1");
  require(s.tol >= 0.0, ErrorKind::Config, "tol must be non-negative");
  const auto& c = pipeline.classifier;
  require(c.c > 0.0, ErrorKind::Config, "svm.c must be positive");
  require(c.median_scale || c.scale > 0.0, ErrorKind::Config, "svm.scale must be positive");
  require(c.tol > 0.0, ErrorKind::Config, "svm.tol must be positive");
  require(sweep_min >= 1 && sweep_min <= sweep_max, ErrorKind::Config,
          "sweep range must satisfy 1 <= p_min <= p_max");
}

RunConfig parse_run_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Config, source + ":" + std::to_string(line_at(text, e.byte == 0 ? 0 : e.byte - 1)) +
                                ": invalid JSON (" + e.what() + ")");
  }
  RunConfig cfg;
  const Section top(root, "", text, source);
  top.allow({"seed", "synth", "stft", "trim_fraction", "mode", "method", "p", "p_prime", "gamma",
             "max_iter", "tol", "svm", "split", "sweep", "eigenmaps"});

  std::uint64_t seed = cfg.seed;
  top.u64("seed", seed);
  cfg.set_seed(seed);

  if (top.has("synth")) {
    const Section s = top.sub("synth");
    s.allow({"sample_rate", "duration", "rotation_hz", "harmonics", "noise_sigma", "clip",
             "tailstock_gain", "spindle_tone_hz", "tailstock_tone_hz", "channel_tone_amplitude",
             "ghost_multiple", "ghost_amplitude", "nok2_harmonics", "burst_hz", "burst_tau",
             "burst_amplitude", "am_depth", "counts"});
    auto& y = cfg.synth;
    s.number("sample_rate", y.sample_rate);
    s.number("duration", y.duration);
    s.number("rotation_hz", y.rotation_hz);
    s.harmonics("harmonics", y.harmonics);
    s.number("noise_sigma", y.noise_sigma);
    s.number("clip", y.clip);
    s.number("tailstock_gain", y.tailstock_gain);
    s.number("spindle_tone_hz", y.spindle_tone_hz);
    s.number("tailstock_tone_hz", y.tailstock_tone_hz);
    s.number("channel_tone_amplitude", y.channel_tone_amplitude);
    s.number("ghost_multiple", y.ghost_multiple);
    s.number("ghost_amplitude", y.ghost_amplitude);
    s.harmonics("nok2_harmonics", y.nok2_harmonics);
    s.number("burst_hz", y.burst_hz);
    s.number("burst_tau", y.burst_tau);
    s.number("burst_amplitude", y.burst_amplitude);
    s.number("am_depth", y.am_depth);
    if (s.has("counts")) {
      const Section c = s.sub("counts");
      c.allow({"OK", "NOK1", "NOK2", "NOK3"});
      for (int k = 0; k < kQualityClassCount; ++k)
        c.count(class_name(k).c_str(), y.counts[static_cast<std::size_t>(k)]);
    }
  }

  if (top.has("stft")) {
    const Section s = top.sub("stft");
    s.allow({"window_len", "frames", "bins", "window"});
    auto& st = cfg.assemble.stft;
    s.count("window_len", st.window_len);
    s.count("frames", st.frames);
    s.count("bins", st.bins);
    std::string w;
    if (s.text("window", w) && w != "hamming") s.error("window", "only \"hamming\" is supported");
  }
  top.number("trim_fraction", cfg.assemble.trim_fraction);
  std::string name;
  if (top.text("mode", name)) {
    try {
      cfg.assemble.mode = input_mode_from_string(name);
    } catch (const Error& e) {
      top.error("mode", e.what());
    }
  }

  auto& sub = cfg.pipeline.subspace;
  if (top.text("method", name)) {
    try {
      sub.method = method_from_string(name);
    } catch (const Error& e) {
      top.error("method", e.what());
    }
  }
  top.count("p", sub.p);
  top.count("p_prime", sub.p_prime);
  top.number("gamma", sub.gamma);
  top.count("max_iter", sub.max_iter);
  top.number("tol", sub.tol);

  if (top.has("svm")) {
    const Section s = top.sub("svm");
    s.allow({"c", "scale", "tol", "coding"});
    auto& c = cfg.pipeline.classifier;
    s.number("c", c.c);
    if (s.has("scale")) {
      const json& v = s.at("scale");
      if (v.is_string() && v.get<std::string>() == "median") {
        c.median_scale = true;
      } else if (v.is_number()) {
        c.median_scale = false;
        c.scale = v.get<double>();
      } else {
        s.error("scale", "expected a positive number or \"median\"");
      }
    }
    s.number("tol", c.tol);
    if (s.text("coding", name)) {
      if (name == "one_vs_one") {
        c.coding = Coding::OneVsOne;
      } else if (name == "dense") {
        c.coding = Coding::DenseExhaustive;
      } else {
        s.error("coding", "expected \"one_vs_one\" or \"dense\"");
      }
    }
  }

  if (top.has("split")) {
    const Section s = top.sub("split");
    s.allow({"train_fraction", "folds", "stratified"});
    s.number("train_fraction", cfg.split.train_fraction);
    s.count("folds", cfg.split.folds);
    s.flag("stratified", cfg.split.stratified);
  }
  if (top.has("sweep")) {
    const Section s = top.sub("sweep");
    s.allow({"p_min", "p_max"});
    s.count("p_min", cfg.sweep_min);
    s.count("p_max", cfg.sweep_max);
  }
  if (top.has("eigenmaps")) {
    const Section s = top.sub("eigenmaps");
    s.allow({"transpose"});
    s.flag("transpose", cfg.transpose_maps);
  }

  try {
    cfg.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Config, source + ": " + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_file(path), path.string());
}

std::string dump_run_config(const RunConfig& cfg) {
  auto harmonics = [](const std::vector<Harmonic>& hs) {
    ordered_json a = ordered_json::array();
    for (const auto& h : hs) a.push_back({h.multiple, h.amplitude});
    return a;
  };
  const auto& y = cfg.synth;
  ordered_json j;
  j["seed"] = cfg.seed;
  ordered_json s;
  s["sample_rate"] = y.sample_rate;
  s["duration"] = y.duration;
  s["rotation_hz"] = y.rotation_hz;
  s["harmonics"] = harmonics(y.harmonics);
  s["noise_sigma"] = y.noise_sigma;
  s["clip"] = y.clip;
  s["tailstock_gain"] = y.tailstock_gain;
  s["spindle_tone_hz"] = y.spindle_tone_hz;
  s["tailstock_tone_hz"] = y.tailstock_tone_hz;
  s["channel_tone_amplitude"] = y.channel_tone_amplitude;
  s["ghost_multiple"] = y.ghost_multiple;
  s["ghost_amplitude"] = y.ghost_amplitude;
  s["nok2_harmonics"] = harmonics(y.nok2_harmonics);
  s["burst_hz"] = y.burst_hz;
  s["burst_tau"] = y.burst_tau;
  s["burst_amplitude"] = y.burst_amplitude;
  s["am_depth"] = y.am_depth;
  ordered_json counts;
  for (int k = 0; k < kQualityClassCount; ++k)
    counts[class_name(k)] = y.counts[static_cast<std::size_t>(k)];
  s["counts"] = counts;
  j["synth"] = s;
  j["stft"] = {{"window_len", cfg.assemble.stft.window_len},
               {"frames", cfg.assemble.stft.frames},
               {"bins", cfg.assemble.stft.bins},
               {"window", "hamming"}};
  j["trim_fraction"] = cfg.assemble.trim_fraction;
  j["mode"] = to_string(cfg.assemble.mode);
  const auto& sub = cfg.pipeline.subspace;
  j["method"] = to_string(sub.method);
  j["p"] = sub.p;
  j["p_prime"] = sub.p_prime;
  j["gamma"] = sub.gamma;
  j["max_iter"] = sub.max_iter;
  j["tol"] = sub.tol;
  const auto& c = cfg.pipeline.classifier;
  ordered_json svm;
  svm["c"] = c.c;
  if (c.median_scale) {
    svm["scale"] = "median";
  } else {
    svm["scale"] = c.scale;
  }
  svm["tol"] = c.tol;
  svm["coding"] = c.coding == Coding::OneVsOne ? "one_vs_one" : "dense";
  j["svm"] = svm;
  j["split"] = {{"train_fraction", cfg.split.train_fraction},
                {"folds", cfg.split.folds},
                {"stratified", cfg.split.stratified}};
  j["sweep"] = {{"p_min", cfg.sweep_min}, {"p_max", cfg.sweep_max}};
  j["eigenmaps"] = {{"transpose", cfg.transpose_maps}};
  return j.dump(2) + "\n";
}

std::string config_hash(const RunConfig& cfg) { return hex_u64(fnv1a64(dump_run_config(cfg))); }

}  // namespace ghm

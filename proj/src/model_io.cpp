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

#include "ghm/model_io.hpp"

#include <type_traits>

#include <json.hpp>

#include "ghm/error.hpp"
#include "ghm/io.hpp"

namespace ghm {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json hex(double v) { return hex_double(v); }

double read_double(const json& j) {
  require(j.is_string(), ErrorKind::CorruptData, "model number is not a hex float string");
  return parse_hex_double(j.get<std::string>());
}

ordered_json vec(std::span<const double> v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(hex_double(x));
  return a;
}

Vector read_vec(const json& j) {
  require(j.is_array(), ErrorKind::CorruptData, "model vector is not an array");
  Vector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(read_double(x));
  return v;
}

ordered_json mat(const Matrix& m) {
  ordered_json o;
  o["rows"] = m.rows();
  o["cols"] = m.cols();
  o["data"] = vec(m.values());
  return o;
}

Matrix read_mat(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  Vector data = read_vec(j.at("data"));
  require(data.size() == rows * cols, ErrorKind::CorruptData, "model matrix size mismatch");
  if (rows == 0 || cols == 0) return Matrix();
  return Matrix(rows, cols, std::move(data));
}

ordered_json pca_json(const PcaModel& m) {
  ordered_json o;
  o["map_dims"] = {m.map_dims.rows, m.map_dims.cols};
  o["mean"] = vec(m.mean);
  o["eigenvalues"] = vec(m.eigenvalues);
  o["components"] = mat(m.components);
  return o;
}

PcaModel read_pca(const json& j) {
  PcaModel m;
  m.map_dims = {j.at("map_dims").at(0).get<std::size_t>(), j.at("map_dims").at(1).get<std::size_t>()};
  m.mean = read_vec(j.at("mean"));
  m.eigenvalues = read_vec(j.at("eigenvalues"));
  m.components = read_mat(j.at("components"));
  require(m.components.rows() == m.eigenvalues.size() && m.components.cols() == m.mean.size() &&
              m.map_dims.rows * m.map_dims.cols == m.mean.size(),
          ErrorKind::CorruptData, "PCA payload is inconsistent");
  return m;
}

ordered_json subspace_json(const SubspaceModel& s) {
  ordered_json o;
  if (const auto* pca = std::get_if<PcaModel>(&s)) {
    o["pca"] = pca_json(*pca);
  } else if (const auto* f = std::get_if<FisherModel>(&s)) {
    o["pca"] = pca_json(f->pca);
    o["lda"] = mat(f->lda);
    o["combined"] = mat(f->combined);
    o["eigenvalues"] = vec(f->eigenvalues);
    o["classes"] = f->classes;
    ordered_json means = ordered_json::array();
    for (const auto& m : f->class_means) means.push_back(vec(m));
    o["class_means"] = means;
    o["ridge"] = hex(f->ridge);
  } else {
    const auto& u = std::get<UmldaModel>(s);
    o["order"] = u.order;
    o["dims"] = u.dims;
    o["gamma"] = hex(u.gamma);
    o["mean"] = vec(u.mean.values());
    ordered_json emps = ordered_json::array();
    for (const auto& e : u.emps) {
      ordered_json modes = ordered_json::array();
      for (const auto& v : e.modes) modes.push_back(vec(v));
      emps.push_back(modes);
    }
    o["emps"] = emps;
    o["deflation"] = mat(u.deflation);
    o["training_features"] = mat(u.training_features);
    ordered_json diags = ordered_json::array();
    for (const auto& d : u.diagnostics) {
      ordered_json dj;
      dj["iterations"] = d.iterations;
      dj["converged"] = d.converged;
      dj["ridge"] = hex(d.ridge);
      dj["feasible_from"] = d.feasible_from;
      dj["objective"] = vec(d.objective);
      diags.push_back(dj);
    }
    o["diagnostics"] = diags;
  }
  return o;
}

SubspaceModel read_subspace(Method method, const json& j) {
  switch (method) {
    case Method::Pca:
      return read_pca(j.at("pca"));
    case Method::PcaLda: {
      FisherModel f;
      f.pca = read_pca(j.at("pca"));
      f.lda = read_mat(j.at("lda"));
      f.combined = read_mat(j.at("combined"));
      f.eigenvalues = read_vec(j.at("eigenvalues"));
      f.classes = j.at("classes").get<std::vector<int>>();
      for (const auto& m : j.at("class_means")) f.class_means.push_back(read_vec(m));
      f.ridge = read_double(j.at("ridge"));
      require(f.combined.rows() == f.eigenvalues.size() && f.combined.cols() == f.pca.dim(),
              ErrorKind::CorruptData, "PCA-LDA payload is inconsistent");
      return f;
    }
    case Method::Rumlda: {
      UmldaModel u;
      u.order = j.at("order").get<int>();
      u.dims = j.at("dims").get<Tensor3::Dims>();
      u.gamma = read_double(j.at("gamma"));
      Vector mean = read_vec(j.at("mean"));
      require(mean.size() == u.dims[0] * u.dims[1] * u.dims[2] && !mean.empty(),
              ErrorKind::CorruptData, "R-UMLDA mean does not match its dims");
      u.mean = Tensor3(u.dims, std::move(mean));
      for (const auto& e : j.at("emps")) {
        Emp emp;
        for (const auto& v : e) emp.modes.push_back(read_vec(v));
        require(emp.modes.size() == static_cast<std::size_t>(u.order), ErrorKind::CorruptData,
                "EMP has the wrong number of modes");
        for (std::size_t m = 0; m < emp.modes.size(); ++m)
          require(emp.modes[m].size() == u.dims[m], ErrorKind::CorruptData,
                  "EMP mode vector has the wrong length");
        u.emps.push_back(std::move(emp));
      }
      u.deflation = read_mat(j.at("deflation"));
      require(u.deflation.rows() == u.emps.size() && u.deflation.cols() == u.emps.size(),
              ErrorKind::CorruptData, "R-UMLDA deflation matrix has the wrong size");
      u.training_features = read_mat(j.at("training_features"));
      for (const auto& dj : j.at("diagnostics")) {
        EmpDiagnostics d;
        d.iterations = dj.at("iterations").get<std::size_t>();
        d.converged = dj.at("converged").get<bool>();
        d.ridge = read_double(dj.at("ridge"));
        d.feasible_from = dj.at("feasible_from").get<std::size_t>();
        d.objective = read_vec(dj.at("objective"));
        u.diagnostics.push_back(std::move(d));
      }
      return u;
    }
  }
  fail(ErrorKind::CorruptData, "unknown method");
}

ordered_json classifier_json(const EcocClassifier& c) {
  ordered_json o;
  o["classes"] = c.classes;
  o["dim"] = c.dim;
  o["coding"] = mat(c.coding);
  ordered_json learners = ordered_json::array();
  for (const auto& l : c.learners) {
    ordered_json lj;
    lj["bias"] = hex(l.bias);
    lj["kernel_scale"] = hex(l.kernel_scale);
    lj["box_c"] = hex(l.box_c);
    lj["converged"] = l.converged;
    lj["iterations"] = l.iterations;
    lj["weights"] = vec(l.weights);
    ordered_json svs = ordered_json::array();
    for (const auto& sv : l.support_vectors) svs.push_back(vec(sv));
    lj["support_vectors"] = svs;
    learners.push_back(lj);
  }
  o["learners"] = learners;
  return o;
}

EcocClassifier read_classifier(const json& j) {
  EcocClassifier c;
  c.classes = j.at("classes").get<std::vector<int>>();
  c.dim = j.at("dim").get<std::size_t>();
  c.coding = read_mat(j.at("coding"));
  for (const auto& lj : j.at("learners")) {
    BinarySvm l;
    l.bias = read_double(lj.at("bias"));
    l.kernel_scale = read_double(lj.at("kernel_scale"));
    l.box_c = read_double(lj.at("box_c"));
    l.converged = lj.at("converged").get<bool>();
    l.iterations = lj.at("iterations").get<std::size_t>();
    l.weights = read_vec(lj.at("weights"));
    for (const auto& sv : lj.at("support_vectors")) {
      l.support_vectors.push_back(read_vec(sv));
      require(l.support_vectors.back().size() == c.dim, ErrorKind::CorruptData,
              "support vector has the wrong length");
    }
    require(l.weights.size() == l.support_vectors.size() && l.kernel_scale > 0.0,
            ErrorKind::CorruptData, "SVM learner payload is inconsistent");
    c.learners.push_back(std::move(l));
  }
  require(c.coding.rows() == c.classes.size() && c.coding.cols() == c.learners.size() &&
              c.classes.size() >= 2,
          ErrorKind::CorruptData, "ECOC payload is inconsistent");
  return c;
}

}  // namespace

std::string encode_model(const ModelFile& m) {
  const auto& p = m.pipeline;
  ordered_json j;
  j["format"] = "ghm-model";
  j["format_version"] = kModelFormatVersion;
  j["method"] = to_string(method_of(p.subspace));
  j["mode"] = to_string(p.mode);
  j["shape"] = {p.shape.frames, p.shape.bins, p.shape.channels};
  ordered_json a;
  a["window_len"] = m.assemble.stft.window_len;
  a["frames"] = m.assemble.stft.frames;
  a["bins"] = m.assemble.stft.bins;
  a["window"] = "hamming";
  a["trim_fraction"] = hex(m.assemble.trim_fraction);
  a["mode"] = to_string(m.assemble.mode);
  j["assemble"] = a;
  j["subspace"] = subspace_json(p.subspace);
  j["classifier"] = classifier_json(p.classifier);
  j["provenance"] = {{"seed", m.provenance.seed},
                     {"config_hash", m.provenance.config_hash},
                     {"tool_version", m.provenance.tool_version}};
  return j.dump(1) + "\n";
}

ModelFile decode_model(std::string_view text) {
  try {
    const json j = json::parse(text);
    require(j.at("format").get<std::string>() == "ghm-model", ErrorKind::CorruptData,
            "not a ghm model file");
    const int version = j.at("format_version").get<int>();
    require(version == kModelFormatVersion, ErrorKind::CorruptData,
            "unsupported model format version " + std::to_string(version));
    ModelFile m;
    const Method method = method_from_string(j.at("method").get<std::string>());
    m.pipeline.mode = input_mode_from_string(j.at("mode").get<std::string>());
    const auto& shape = j.at("shape");
    m.pipeline.shape = {shape.at(0).get<std::size_t>(), shape.at(1).get<std::size_t>(),
                        shape.at(2).get<std::size_t>()};
    const auto& a = j.at("assemble");
    m.assemble.stft.window_len = a.at("window_len").get<std::size_t>();
    m.assemble.stft.frames = a.at("frames").get<std::size_t>();
    m.assemble.stft.bins = a.at("bins").get<std::size_t>();
    m.assemble.trim_fraction = read_double(a.at("trim_fraction"));
    m.assemble.mode = input_mode_from_string(a.at("mode").get<std::string>());
    m.assemble.stft.validate();
    require(m.assemble.shape() == m.pipeline.shape, ErrorKind::CorruptData,
            "model shape does not match its assembly settings");
    m.pipeline.subspace = read_subspace(method, j.at("subspace"));
    if (const auto* u = std::get_if<UmldaModel>(&m.pipeline.subspace)) {
      require(u->dims == m.pipeline.shape.dims(), ErrorKind::CorruptData,
              "R-UMLDA dims do not match the model shape");
    } else {
      const std::size_t d = std::visit(
          [](const auto& x) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, UmldaModel>) {
              return 0;
            } else {
              return x.dim();
            }
          },
          m.pipeline.subspace);
      require(d == m.pipeline.shape.size(), ErrorKind::CorruptData,
              "subspace dimension does not match the model shape");
    }
    m.pipeline.classifier = read_classifier(j.at("classifier"));
    require(m.pipeline.classifier.dim == feature_count(m.pipeline.subspace),
            ErrorKind::CorruptData, "classifier and subspace disagree on the feature count");
    const auto& prov = j.at("provenance");
    m.provenance.seed = prov.at("seed").get<std::uint64_t>();
    m.provenance.config_hash = prov.at("config_hash").get<std::string>();
    m.provenance.tool_version = prov.at("tool_version").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    fail(ErrorKind::CorruptData, std::string("malformed model file: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CorruptData) throw;
    fail(ErrorKind::CorruptData, std::string("malformed model file: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const ModelFile& m) {
  write_file_atomic(path, encode_model(m));
}

ModelFile load_model(const std::filesystem::path& path) { return decode_model(read_file(path)); }

}  // namespace ghm

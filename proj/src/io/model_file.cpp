#include "nulllda/io/model_file.hpp"

#include <fstream>

namespace nulllda::io {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) {
  throw Error(ErrorKind::InvalidInput, "model file: " + msg);
}

std::vector<double> column_major(const Matrix<double>& m) {
  return {m.data(), m.data() + m.size()};
}

Matrix<double> from_column_major(const json& values, Index rows, Index cols, const char* name) {
  if (!values.is_array() || static_cast<Index>(values.size()) != rows * cols) {
    bad(std::string(name) + " must hold " + std::to_string(rows * cols) + " numbers");
  }
  Matrix<double> m(rows, cols);
  for (Index i = 0; i < rows * cols; ++i) {
    const auto& v = values[static_cast<std::size_t>(i)];
    if (!v.is_number()) bad(std::string(name) + " contains a non-number");
    m.data()[i] = v.get<double>();
  }
  return m;
}

Verdict verdict_from_string(const std::string& s) {
  if (s == to_string(Verdict::Nonsingular)) return Verdict::Nonsingular;
  if (s == to_string(Verdict::NearSingular)) return Verdict::NearSingular;
  if (s == to_string(Verdict::Singular)) return Verdict::Singular;
  bad("unknown certificate verdict '" + s + "'");
}

}  // namespace

json model_to_json(const NullLdaModel<double>& model) {
  const auto& cert = model.certificate;
  return json{
      {"format_version", kModelFormatVersion},
      {"d", model.dim()},
      {"c", model.num_classes()},
      {"labels", model.class_names},
      {"W", column_major(model.orientation)},
      {"reduced_centroids", column_major(model.reduced_centroids)},
      {"seed", model.seed},
      {"retries", model.retries},
      {"certificate",
       {{"sigma_min", cert.sigma_min},
        {"sigma_max", cert.sigma_max},
        {"threshold", cert.threshold},
        {"verdict", std::string(to_string(cert.verdict))}}},
  };
}

NullLdaModel<double> model_from_json(const json& doc) {
  try {
    if (!doc.is_object()) bad("expected a JSON object");
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      bad("unsupported format version " + std::to_string(version) + " (expected " +
          std::to_string(kModelFormatVersion) + ")");
    }
    const auto d = doc.at("d").get<Index>();
    const auto c = doc.at("c").get<Index>();
    if (d < 1 || c < 2) bad("need d >= 1 and c >= 2");

    NullLdaModel<double> m;
    m.class_names = doc.at("labels").get<std::vector<std::string>>();
    if (static_cast<Index>(m.class_names.size()) != c) bad("label map size differs from c");
    m.orientation = from_column_major(doc.at("W"), d, c - 1, "W");
    m.reduced_centroids = from_column_major(doc.at("reduced_centroids"), c - 1, c, "reduced_centroids");
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.retries = doc.at("retries").get<int>();
    const auto& cert = doc.at("certificate");
    m.certificate.sigma_min = cert.at("sigma_min").get<double>();
    m.certificate.sigma_max = cert.at("sigma_max").get<double>();
    m.certificate.threshold = cert.at("threshold").get<double>();
    m.certificate.verdict = verdict_from_string(cert.at("verdict").get<std::string>());
    return m;
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

void save_model(std::ostream& out, const NullLdaModel<double>& model) {
  out << model_to_json(model).dump(2) << '\n';
}

void save_model_file(const std::string& path, const NullLdaModel<double>& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  save_model(out, model);
}

NullLdaModel<double> load_model(std::istream& in) {
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    bad(e.what());
  }
  return model_from_json(doc);
}

NullLdaModel<double> load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  return load_model(in);
}

void validate_model(const NullLdaModel<double>& model) {
  const auto& w = model.orientation;
  for (Index j = 0; j < w.cols(); ++j) {
    if (!(w.col(j).norm() > 0.0)) {
      throw Error(ErrorKind::DegenerateModel, "degenerate model: column " + std::to_string(j) + " of W is zero");
    }
  }
  if (!w.allFinite() || numerical_rank(w) < w.cols()) {
    throw Error(ErrorKind::DegenerateModel, "degenerate model: W is not of full column rank");
  }
}

}  // namespace nulllda::io

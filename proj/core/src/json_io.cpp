#include "kst/json_io.hpp"

#include <json.hpp>

#include <istream>
#include <sstream>

namespace kst {

namespace {

using nlohmann::json;

constexpr const char* kBasisTag = "01,02,03,23,31,12";

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("malformed JSON document");
  return j;
}

template <typename Matrix>
json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

template <typename Matrix>
Matrix matrix_from_json(const json& rows, const char* what) {
  Matrix m;
  if (!rows.is_array() || rows.size() != static_cast<size_t>(m.rows()))
    throw InvalidInput(std::string("expected a ") + what + " matrix");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<size_t>(m.cols()))
      throw InvalidInput(std::string("expected a ") + what + " matrix");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const json& cell = row[static_cast<size_t>(j)];
      if (!cell.is_number()) throw InvalidInput("matrix entries must be numbers");
      m(i, j) = cell.get<double>();
    }
  }
  return m;
}

Vec3 vec3_from_json(const json& arr, const char* what) {
  if (!arr.is_array() || arr.size() != 3)
    throw InvalidInput(std::string("expected a 3-vector for ") + what);
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!arr[static_cast<size_t>(i)].is_number())
      throw InvalidInput("vector entries must be numbers");
    v[i] = arr[static_cast<size_t>(i)].get<double>();
  }
  return v;
}

}  // namespace

std::string to_json(const AlgCurvTensor& r) {
  json j;
  j["format"] = "act-v1";
  j["basis"] = kBasisTag;
  j["matrix"] = matrix_to_json(r.matrix());
  return j.dump();
}

std::string to_json(const DiagonalACT& d) {
  json j;
  j["w"] = {d.w()[0], d.w()[1], d.w()[2]};
  j["t"] = {d.t()[0], d.t()[1], d.t()[2]};
  j["s"] = d.s();
  return j.dump();
}

std::string to_json(const Sym4& h) {
  json j;
  j["sym4"] = matrix_to_json(h);
  return j.dump();
}

std::string to_json(const KSMatrix& m) {
  json j;
  j["format"] = "ks-v1";
  j["delta"] = {m.delta()[0], m.delta()[1], m.delta()[2]};
  j["t"] = {m.t()[0], m.t()[1], m.t()[2]};
  return j.dump();
}

AlgCurvTensor act_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("matrix")) throw InvalidInput("missing \"matrix\" field");
  if (j.contains("format") && j["format"] != "act-v1")
    throw InvalidInput("unknown tensor format");
  if (j.contains("basis") && j["basis"] != kBasisTag)
    throw InvalidInput("unexpected basis order");
  const Mat6 m = matrix_from_json<Mat6>(j["matrix"], "6x6");
  try {
    return AlgCurvTensor::from_matrix(
        m, 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff()));
  } catch (const SymmetryViolation& e) {
    throw InvalidInput(std::string("not a curvature tensor: ") + e.what());
  }
}

DiagonalACT diagonal_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("w") || !j.contains("t"))
    throw InvalidInput("missing \"w\"/\"t\" fields");
  const Vec3 w = vec3_from_json(j["w"], "w");
  const Vec3 t = vec3_from_json(j["t"], "t");
  double s = 0.0;
  if (j.contains("s")) {
    if (!j["s"].is_number()) throw InvalidInput("\"s\" must be a number");
    s = j["s"].get<double>();
  }
  return DiagonalACT(w, t, s);
}

Sym4 sym4_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("sym4")) throw InvalidInput("missing \"sym4\" field");
  return symmetrized(matrix_from_json<Mat4>(j["sym4"], "4x4"));
}

KSMatrix ks_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.contains("format") && j["format"] != "ks-v1")
    throw InvalidInput("unknown KS format");
  if (j.contains("delta") && j.contains("t")) {
    const Vec3 delta = vec3_from_json(j["delta"], "delta");
    const Vec3 t = vec3_from_json(j["t"], "t");
    return KSMatrix(delta, t);
  }
  if (j.contains("matrix")) {
    const Mat3 m = matrix_from_json<Mat3>(j["matrix"], "3x3");
    try {
      return KSMatrix::from_matrix(m, 1e-9);
    } catch (const InvalidInput&) {
      throw;
    }
  }
  throw InvalidInput("missing \"delta\"/\"t\" (or \"matrix\") fields");
}

TensorInput tensor_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.contains("matrix")) {
    return TensorInput{act_from_json(text), false,
                       DiagonalACT(Vec3::Zero(), Vec3::Zero(), 0.0)};
  }
  if (j.contains("w")) {
    const DiagonalACT d = diagonal_from_json(text);
    return TensorInput{d.to_act(), true, d};
  }
  throw InvalidInput("unrecognised tensor document");
}

std::string slurp(std::istream& in) {
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace kst

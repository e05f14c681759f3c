#include "contain/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "contain/errors.h"

namespace contain {
namespace {

using nlohmann::json;

constexpr double kSymmetryTol = 1e-12;

json Parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

template <typename T>
T Get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field \"") + key + "\": " + e.what());
  }
}

Matrix SquareFromFlat(const std::vector<double>& flat, int dim, const std::string& what) {
  if (static_cast<long>(flat.size()) != static_cast<long>(dim) * dim) {
    throw ParseError(what + ": expected " + std::to_string(dim * dim) + " entries, got " +
                     std::to_string(flat.size()));
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = flat[static_cast<size_t>(i) * dim + j];
  }
  return m;
}

std::vector<double> Flat(const Matrix& m) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(m.size()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

Matrix RowsToMatrix(const std::vector<std::vector<double>>& rows, const std::string& what) {
  if (rows.empty()) throw ParseError(what + ": empty");
  const size_t cols = rows.front().size();
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ParseError(what + ": ragged rows");
    for (size_t j = 0; j < cols; ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> MatrixToRows(const Matrix& m) {
  std::vector<std::vector<double>> rows(static_cast<size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) rows[static_cast<size_t>(i)].push_back(m(i, j));
  }
  return rows;
}

json PencilJson(const LinearPencil& p) {
  json j;
  j["n"] = p.n();
  j["k"] = p.k();
  json mats = json::array();
  for (const auto& m : p.mats()) mats.push_back(Flat(m.dense()));
  j["mats"] = mats;
  return j;
}

LinearPencil PencilFrom(const json& j) {
  const int n = Get<int>(j, "n");
  const int k = Get<int>(j, "k");
  if (n < 0 || k < 1) throw ParseError("pencil: need n >= 0 and k >= 1");
  const auto mats = Get<std::vector<std::vector<double>>>(j, "mats");
  if (static_cast<int>(mats.size()) != n + 1) {
    throw ParseError("pencil: expected " + std::to_string(n + 1) + " matrices");
  }
  std::vector<SymMatrix> out;
  for (int p = 0; p <= n; ++p) {
    Matrix m = SquareFromFlat(mats[static_cast<size_t>(p)], k, "mats[" + std::to_string(p) + "]");
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        if (std::abs(m(a, b) - m(b, a)) > kSymmetryTol * (1.0 + std::abs(m(a, b)))) {
          throw ParseError("mats[" + std::to_string(p) + "] is not symmetric");
        }
      }
    }
    out.emplace_back(m);
  }
  return LinearPencil(std::move(out));
}

}  // namespace

LinearPencil PencilFromJson(const std::string& text) { return PencilFrom(Parse(text)); }

std::string PencilToJson(const LinearPencil& p) { return PencilJson(p).dump(); }

Body BodyFromJson(const std::string& text) {
  const json j = Parse(text);
  const std::string type = j.is_object() ? j.value("type", "pencil") : "pencil";
  if (type == "pencil") return PencilFrom(j);
  if (type == "h-polyhedron") {
    const auto b = Get<std::vector<double>>(j, "offsets");
    const Matrix normals = RowsToMatrix(Get<std::vector<std::vector<double>>>(j, "normals"), "normals");
    if (static_cast<int>(b.size()) != normals.rows()) {
      throw ParseError("h-polyhedron: offsets and normals disagree in length");
    }
    return HPolyhedron(Eigen::Map<const Vector>(b.data(), static_cast<int>(b.size())), normals);
  }
  if (type == "v-polytope") {
    return VPolytope(RowsToMatrix(Get<std::vector<std::vector<double>>>(j, "vertices"), "vertices"));
  }
  throw ParseError("unknown body type \"" + type + "\"");
}

std::string BodyToJson(const Body& body) {
  json j;
  if (const auto* p = std::get_if<LinearPencil>(&body)) {
    j = PencilJson(*p);
    j["type"] = "pencil";
  } else if (const auto* h = std::get_if<HPolyhedron>(&body)) {
    j["type"] = "h-polyhedron";
    j["offsets"] = std::vector<double>(h->offsets.data(), h->offsets.data() + h->offsets.size());
    j["normals"] = MatrixToRows(h->normals);
  } else {
    j["type"] = "v-polytope";
    j["vertices"] = MatrixToRows(std::get<VPolytope>(body).vertices);
  }
  return j.dump();
}

ChoiCertificate CertificateFromJson(const std::string& text) {
  const json j = Parse(text);
  ChoiCertificate c;
  c.k = Get<int>(j, "k");
  c.l = Get<int>(j, "l");
  if (c.k < 1 || c.l < 1) throw ParseError("certificate: need k, l >= 1");
  try {
    c.variant = ParseVariant(Get<std::string>(j, "variant"));
    c.provenance = j.contains("provenance") ? ParseProvenance(Get<std::string>(j, "provenance"))
                                            : Provenance::kSolver;
  } catch (const ParseError&) {
    throw;
  } catch (const ContainError& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  c.C = SquareFromFlat(Get<std::vector<double>>(j, "C"), c.k * c.l, "C");
  if (j.contains("slacks")) {
    const auto slacks = Get<std::vector<std::vector<double>>>(j, "slacks");
    for (size_t p = 0; p < slacks.size(); ++p) {
      c.slacks.push_back(SquareFromFlat(slacks[p], c.l, "slacks[" + std::to_string(p) + "]"));
    }
  }
  return c;
}

std::string CertificateToJson(const ChoiCertificate& cert) {
  json j;
  j["k"] = cert.k;
  j["l"] = cert.l;
  j["variant"] = ToString(cert.variant);
  j["C"] = Flat(cert.C);
  json slacks = json::array();
  for (const auto& s : cert.slacks) slacks.push_back(Flat(s));
  j["slacks"] = slacks;
  j["provenance"] = ToString(cert.provenance);
  return j.dump();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text << '\n';
}

}  // namespace contain

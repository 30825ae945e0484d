#include "tqft/algebra_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tqft {
namespace {

using nlohmann::json;

Scalar read_scalar(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": expected a [re, im] pair of numbers");
  }
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError(where + ": non-finite number");
  return {re, im};
}

const json& require_array(const json& j, std::size_t size, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  if (j.size() != size) {
    throw ShapeError(where + ": expected " + std::to_string(size) + " entries, found " + std::to_string(j.size()));
  }
  return j;
}

std::vector<Scalar> read_vector(const json& j, std::size_t n, const std::string& where) {
  require_array(j, n, where);
  std::vector<Scalar> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(read_scalar(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

const json& field(const json& root, const char* name) {
  const auto it = root.find(name);
  if (it == root.end()) throw ParseError(std::string("missing key \"") + name + "\"");
  return *it;
}

json scalar_json(const Scalar& s) { return json::array({s.real(), s.imag()}); }

}  // namespace

AxiomViolation::AxiomViolation(const std::string& message, AxiomReport report)
    : Error(message), report_(std::move(report)) {}

AlgebraData parse_algebra_unchecked(std::string_view json_text, double tol) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("algebra file must contain a JSON object");

  const json& dim_json = field(root, "dimension");
  if (!dim_json.is_number_integer() || dim_json.get<long long>() < 1) {
    throw ParseError("\"dimension\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(dim_json.get<long long>());

  const json& mul = require_array(field(root, "mul"), n, "mul");
  std::vector<Scalar> structure;
  structure.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string wi = "mul[" + std::to_string(i) + "]";
    require_array(mul[i], n, wi);
    for (std::size_t j = 0; j < n; ++j) {
      const auto row = read_vector(mul[i][j], n, wi + "[" + std::to_string(j) + "]");
      structure.insert(structure.end(), row.begin(), row.end());
    }
  }
  auto unit = read_vector(field(root, "unit"), n, "unit");
  auto counit = read_vector(field(root, "counit"), n, "counit");

  AlgebraData data{FrobeniusAlgebra(n, std::move(structure), std::move(unit), std::move(counit)), std::nullopt, {}};

  if (const auto it = root.find("hermitian"); it != root.end() && !it->is_null()) {
    const json& h = require_array(*it, n, "hermitian");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = read_vector(h[i], n, "hermitian[" + std::to_string(i) + "]");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
    }
    try {
      data.hermitian.emplace(std::move(m), tol);
    } catch (const Error& e) {
      AxiomReport report;
      report.checks.push_back({"hermitian", 1.0, false});
      throw AxiomViolation(std::string("invalid hermitian form: ") + e.what(), std::move(report));
    }
  }
  return data;
}

AlgebraData parse_algebra(std::string_view json_text, double tol) {
  AlgebraData data = parse_algebra_unchecked(json_text, tol);
  data.axioms = verify_axioms(data.algebra, tol);
  if (!data.axioms.pass()) {
    std::string failed;
    for (const auto& c : data.axioms.checks) {
      if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
    }
    throw AxiomViolation("algebra fails the Frobenius axioms: " + failed, data.axioms);
  }
  return data;
}

AlgebraData load_algebra(const std::filesystem::path& path, double tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_algebra(buffer.str(), tol);
}

std::string algebra_to_json(const FrobeniusAlgebra& a, const HermitianStructure* h) {
  const std::size_t n = a.dim();
  json root = json::object();
  root["dimension"] = n;
  json mul = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      json entry = json::array();
      for (std::size_t k = 0; k < n; ++k) entry.push_back(scalar_json(a.structure_constant(i, j, k)));
      row.push_back(std::move(entry));
    }
    mul.push_back(std::move(row));
  }
  root["mul"] = std::move(mul);
  json unit = json::array();
  json counit = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    unit.push_back(scalar_json(a.unit()[i]));
    counit.push_back(scalar_json(a.counit()[i]));
  }
  root["unit"] = std::move(unit);
  root["counit"] = std::move(counit);
  if (h != nullptr) {
    json hm = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < n; ++j) row.push_back(scalar_json(h->matrix()(i, j)));
      hm.push_back(std::move(row));
    }
    root["hermitian"] = std::move(hm);
  }
  return root.dump(2) + "\n";
}

}  // namespace tqft

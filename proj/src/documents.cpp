// Copyright 2026 The gkscp Authors
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

#include "gkscp/documents.hpp"

#include <cmath>
#include <set>
#include <vector>
#include <sstream>

#include "gkscp/error.hpp"

namespace gkscp::documents {

namespace {

[[noreturn]] void field_error(std::string_view field, const std::string& what) {
  std::ostringstream os;
  os << "field '" << field << "': " << what;
  throw Error(ErrorCode::kParse, os.str());
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() carries "parse error at line L, column C: ..."
    throw Error(ErrorCode::kParse, std::string("malformed document: ") + e.what());
  }
}

void check_fields(const Json& doc, const std::set<std::string>& allowed,
                  const std::vector<std::string>& required) {
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "document root must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) field_error(key, "unknown field");
  }
  for (const auto& key : required) {
    if (!doc.contains(key)) field_error(key, "missing required field");
  }
}

void check_header(const Json& doc, std::string_view kind) {
  const Json& v = doc.at("version");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
    field_error("version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  const Json& k = doc.at("kind");
  if (!k.is_string() || k.get<std::string>() != kind) {
    field_error("kind", "expected \"" + std::string(kind) + "\"");
  }
}

Index read_dimension(const Json& doc) {
  const Json& n = doc.at("n");
  if (!n.is_number_integer() || n.get<long long>() < 2 || n.get<long long>() > 64) {
    field_error("n", "must be an integer in [2, 64]");
  }
  return static_cast<Index>(n.get<long long>());
}

ComplexMatrix read_square(const Json& doc, std::string_view field, Index size) {
  ComplexMatrix m = matrix_from_json(doc.at(std::string(field)), field);
  if (m.rows() != size || m.cols() != size) {
    std::ostringstream os;
    os << "expected " << size << "x" << size << " matrix, got " << m.rows() << "x" << m.cols();
    field_error(field, os.str());
  }
  if (max_asymmetry(m) > kTolerances.hermiticity) {
    std::ostringstream os;
    os << "not Hermitian (max |M - M^dagger| = " << max_asymmetry(m) << ")";
    field_error(field, os.str());
  }
  return m;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v(i).real(), v(i).imag()}));
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, std::string_view field) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  ComplexMatrix m;
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<size_t>(i)];
    if (!row.is_array()) field_error(field, "row " + std::to_string(i) + " is not an array");
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Index>(row.size()) != cols) {
      field_error(field, "ragged rows");
    }
    for (Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        field_error(field, "entry [" + std::to_string(i) + "][" + std::to_string(c) +
                               "] must be a [re, im] pair of numbers");
      }
      m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
      if (!std::isfinite(m(i, c).real()) || !std::isfinite(m(i, c).imag())) {
        field_error(field, "non-finite entry");
      }
    }
  }
  return m;
}

GeneratorSpec parse_generator(std::string_view text) {
  const Json doc = parse_text(text);
  check_fields(doc, {"version", "kind", "n", "basis", "hamiltonian", "kossakowski"},
               {"version", "kind", "n", "basis", "hamiltonian", "kossakowski"});
  check_header(doc, "generator");
  const Index n = read_dimension(doc);
  const Json& basis = doc.at("basis");
  if (!basis.is_string() || basis.get<std::string>() != kGellMannTag) {
    field_error("basis", std::string("only \"") + kGellMannTag + "\" is supported");
  }
  const ComplexMatrix h = read_square(doc, "hamiltonian", n);
  const ComplexMatrix c = read_square(doc, "kossakowski", n * n - 1);
  return GeneratorSpec(h, KossakowskiMatrix(c));
}

Json generator_to_json(const GeneratorSpec& g) {
  Json doc;
  doc["version"] = kSchemaVersion;
  doc["kind"] = "generator";
  doc["n"] = g.dimension();
  doc["basis"] = g.basis().tag();
  doc["hamiltonian"] = matrix_to_json(g.hamiltonian());
  doc["kossakowski"] = matrix_to_json(g.kossakowski().matrix());
  return doc;
}

Perturbation parse_perturbation(std::string_view text) {
  const Json doc = parse_text(text);
  check_fields(doc, {"version", "kind", "n", "gamma"}, {"version", "kind", "n", "gamma"});
  check_header(doc, "perturbation");
  Perturbation p;
  p.n = read_dimension(doc);
  p.gamma = read_square(doc, "gamma", p.n * p.n - 1);
  return p;
}

Json perturbation_to_json(const Perturbation& p) {
  Json doc;
  doc["version"] = kSchemaVersion;
  doc["kind"] = "perturbation";
  doc["n"] = p.n;
  doc["gamma"] = matrix_to_json(p.gamma);
  return doc;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace gkscp::documents

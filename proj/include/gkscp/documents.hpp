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

#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gkscp/generators.hpp"
#include "gkscp/numerics.hpp"

namespace gkscp::documents {

// Insertion-ordered so that emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kGellMannTag = "gell-mann-orthonormal";

/// Row-major nested arrays of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
Json vector_to_json(const ComplexVector& v);
ComplexMatrix matrix_from_json(const Json& j, std::string_view field);

/// {"version": 1, "kind": "generator", "n": ..., "basis": "gell-mann-orthonormal",
///  "hamiltonian": [[[re, im], ...], ...], "kossakowski": [[[re, im], ...], ...]}
/// Unknown fields are rejected. Errors are kParse with the offending line
/// (syntax) or field (schema) in the message.
GeneratorSpec parse_generator(std::string_view text);
Json generator_to_json(const GeneratorSpec& g);

/// {"version": 1, "kind": "perturbation", "n": ..., "gamma": [[[re, im], ...], ...]}
/// gamma is the Hermitian (n^2-1) x (n^2-1) change of the Kossakowski matrix.
struct Perturbation {
  Index n = 0;
  ComplexMatrix gamma;
};

Perturbation parse_perturbation(std::string_view text);
Json perturbation_to_json(const Perturbation& p);

/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace gkscp::documents

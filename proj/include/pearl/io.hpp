#pragma once

// JSON documents for complexes, structure-constant tables, ν tables, triangle
// counts and classification problems. Readers throw ParseError whose location
// is a JSON pointer into the document (or "line L, column C" for syntax errors).

#include <optional>
#include <string>

#include "json.hpp"
#include "pearl/classify.hpp"
#include "pearl/complexes.hpp"
#include "pearl/presets.hpp"
#include "pearl/quantum_ops.hpp"
#include "pearl/torus.hpp"

namespace pearl::io {

using nlohmann::json;

enum class DocType { Complex, Structure, Nu, Triangle, Problem, Preset };
std::string to_string(DocType t);

json parse_text(const std::string& text, const std::string& source = "<input>");
json read_file(const std::string& path);
void write_file(const std::string& path, const json& doc);

/// Uses the "type" field when present, otherwise the distinguishing keys.
DocType detect(const json& doc);

PearlComplex complex_from_json(const json& doc);
json complex_to_json(const PearlComplex& c);

struct StructureDoc {
  QuantumStructure structure;
  std::optional<ClassicalTables> classical;
};

/// The ambient model is rebuilt from {"model": "cpn"|"quadric"|"s2xs2", "n"}.
StructureDoc structure_from_json(const json& doc);
json structure_to_json(const QuantumStructure& qs, const std::optional<ClassicalTables>& classical = std::nullopt);

struct NuDoc {
  torus::NuTable nu;
  /// Basis-dependent γ', γ'' when the document supplies them.
  std::optional<std::pair<bool, bool>> gammas;
};

NuDoc nu_from_json(const json& doc);
json nu_to_json(const torus::NuTable& nu, const std::optional<std::pair<bool, bool>>& gammas = std::nullopt);

torus::TriangleCounts triangle_from_json(const json& doc);
json triangle_to_json(const torus::TriangleCounts& tc);

classify::ClassificationProblem problem_from_json(const json& doc);
json problem_to_json(const classify::ClassificationProblem& p);

/// Every bundled document of a preset plus its expected-results block.
json preset_to_json(const presets::Preset& p);

}  // namespace pearl::io

#pragma once

// Built-in examples: the circle in R², ℝPⁿ ⊂ ℂPⁿ, the Clifford and split
// tori, and homology spheres in the quadric, each with the results it must
// reproduce.

#include <optional>
#include <string>
#include <vector>

#include "pearl/classify.hpp"
#include "pearl/complexes.hpp"
#include "pearl/quantum_ops.hpp"
#include "pearl/report.hpp"
#include "pearl/torus.hpp"

namespace pearl::presets {

struct Preset {
  std::string name;
  std::string description;
  std::optional<PearlComplex> complex;
  std::optional<QuantumStructure> structure;
  std::optional<ClassicalTables> classical;
  std::optional<torus::NuTable> nu;
  std::optional<torus::TorusQuantumData> torus_data;
  std::optional<torus::TriangleCounts> triangle;
  /// One problem, or a family of Betti candidates.
  std::vector<classify::ClassificationProblem> problems;
  /// Expected results checked by self_test.
  nlohmann::json expected = nlohmann::json::object();
};

/// Circle in ℝ² (N = 2): d(x₀) = x₁t.
PearlComplex circle_r2(RingMode mode = RingMode::LambdaPlus);
/// Perfect Morse complex of ℝPⁿ with N = n+1 and zero differential.
PearlComplex rpn_complex(int n, RingMode mode = RingMode::Lambda);
/// Wide structure on α₀..αₙ over ℂPⁿ, α_i ↔ a^{n-i} with a^{n+1} = t.
QuantumStructure rpn_structure(int n);
ClassicalTables rpn_classical(int n);
/// Perfect Morse complex of T² (N = 2), zero differential.
PearlComplex torus_complex(RingMode mode = RingMode::Lambda);
/// Sⁿ in the quadric (N = 2n), zero differential.
PearlComplex sphere_complex(int n, RingMode mode = RingMode::Lambda);

/// Maslov-2 disk census of the Clifford torus and of the split torus.
torus::NuTable clifford_nu();
torus::NuTable split_torus_nu();

/// Names accepted by make_preset: circle_r2, rpn, clifford, split_torus, quadric_sphere.
std::vector<std::string> preset_names();
/// `n` is used by the parametrized presets (rpn, clifford, quadric_sphere).
Preset make_preset(const std::string& name, std::optional<int> n = std::nullopt);
/// The whole library at default sizes (rpn 2..6, clifford 2, quadric_sphere 2 and 4).
std::vector<Preset> all_presets();

/// Every applicable check plus the expected-results block.
Report self_test(const Preset& p);

}  // namespace pearl::presets

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mcforge/coalg.hpp"
#include "mcforge/dgla.hpp"

namespace mcforge::io {

/// Algebra documents:
///   {"char": 0 | p,
///    "basis": [{"name": "a", "degree": 1}, ...],
///    "d": {"k": [[...], ...]}   row r = d of the r-th basis element of degree k,
///                               in the basis elements of degree k+1
///    "brackets": [{"i": 0, "j": 1, "coeffs": [...]}],
///    "filtration": [[v, ...], ...]}   optional, stage n spans F_n
/// Scalars are integers or strings "num/den". A bracket listed in one order
/// only is completed by graded antisymmetry.
DgLieAlgebra algebra_from_json(const std::string& text, std::uint32_t prime_override = 0);
std::string algebra_to_json(const DgLieAlgebra& g);

/// Same layout with "cobrackets" instead of "brackets": coeffs[k] is the
/// coefficient of c_i ⊗ c_j in δ(c_k), completed by co-antisymmetry.
LieCoalgebra coalgebra_from_json(const std::string& text, std::uint32_t prime_override = 0);
std::string coalgebra_to_json(const LieCoalgebra& c);

/// {"kind": "lie" | "coalgebra", "source": {...}, "target": {...},
///  "matrix": [[...]]}  (rows index the target basis)
struct MorphismDocument {
  std::string kind;
  DgLieMorphism lie;                        // for "coalgebra", the dual φ = f^∨
  std::optional<CoalgebraMorphism> coalgebra;
};
MorphismDocument morphism_from_json(const std::string& text, std::uint32_t prime_override = 0);
std::string morphism_to_json(const DgLieMorphism& phi);
std::string morphism_to_json(const CoalgebraMorphism& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace mcforge::io

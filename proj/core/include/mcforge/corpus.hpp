#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcforge/dgla.hpp"

namespace mcforge::corpus {

/// Abelian algebra with the given degree list and zero differential.
DgLieAlgebra abelian(const std::vector<int>& degrees, std::uint32_t prime = 0);
/// a, b in degree 1, c in degree 2, [a,b] = [b,a] = c.
DgLieAlgebra heisenberg(std::uint32_t prime = 0);
/// λ in degree 0, a, b in degree 1, [λ,a] = b.
DgLieAlgebra gauge2(std::uint32_t prime = 0);
/// λ, μ in degree 0, a, b, e in degree 1, [λ,a] = b, [λ,b] = e, dμ = e.
DgLieAlgebra class3(std::uint32_t prime = 0);
/// g ⊕ (u -> du) with u in degree 0, placed in F_1 \ F_2; returns the
/// inclusion g -> g ⊕ A.
DgLieMorphism acyclic_extension(const DgLieAlgebra& g);
/// k·a (degree 1) -> 0, which kills a cohomology class.
DgLieMorphism h1_collapse(std::uint32_t prime = 0);

}  // namespace mcforge::corpus

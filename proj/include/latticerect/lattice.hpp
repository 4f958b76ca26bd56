#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latticerect/divisor.hpp"
#include "latticerect/matrix.hpp"
#include "latticerect/repr.hpp"

namespace latticerect {

/// Rank-2 free R-submodule of K^2 spanned by the columns of an invertible
/// basis matrix.
struct Lattice {
    Matrix2 basis;
    explicit Lattice(Matrix2 b);
};

/// nullopt when stable; otherwise the label of a violating generator (or
/// generator inverse).
std::optional<std::string> stability_violation(const Lattice& L, const Representation& rep);
inline bool is_stable(const Lattice& L, const Representation& rep) {
    return !stability_violation(L, rep).has_value();
}

/// Scalar s with L2 = s*L1, or nullopt when the classes differ.
std::optional<FieldElem> homothety_witness(const Lattice& L1, const Lattice& L2);

struct EigenSplit {
    FieldElem gen_psi, gen_psi_prime;  // generators of the fractional ideals T(xi)
    bool certified;                    // Bezout expressions found for both components
    bool pure_vectors_contained;       // gen_xi * v_xi lie in L
    bool components_generate;          // L equals the direct sum of the components
};

/// Splits L along the eigen-idempotents of the regular element.
/// Throws NotG0Stable when an idempotent image leaves L.
EigenSplit eigen_split(const Lattice& L, const RegularElementData& regular);

struct QuotientData {
    Divisor char_ideal;                          // divisor of det(basis_sup^-1 basis_sub)
    bool cyclic = false;
    int generator_index = -1;                    // which basis vector of sup generates; -1 = zero module
    std::map<std::string, FieldElem> character;  // generator label -> exact lift of chi(g)
    Divisor character_modulus;                   // chi is unique modulo this divisor
};

/// Data of the G-module Lsup/Lsub. mod_divisor is the extra modulus the
/// character is reduced by (the edge prime, or prod p^(j'-j)).
QuotientData quotient_data(const Lattice& sub, const Lattice& sup, const Representation& rep,
                           const Divisor& mod_divisor, const std::vector<PrimeElem>& hints);

struct ResidualLine {
    std::array<mpq_class, 2> dir;  // canonical representative over k = F_p
    Lattice preimage;              // index-pi sublattice above the line
};

/// All residual lines of L/mL invariant under every generator; d = 1 over F_p
/// only (q+1 candidate lines, each tested exactly).
std::vector<ResidualLine> residual_stable_lines(const Lattice& L, const Representation& rep);

}  // namespace latticerect

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace latticerect::iwasawa {

/// Formal tokens of the divisor calculus: the primes dividing the congruence
/// ideal, the augmentation prime, the coprime remainder of a_p - 1, and the
/// opaque base characteristic ideal.
struct Token {
    enum class Kind { prime, gamma_minus_1, ap_remainder, char_sel_min };
    Kind kind;
    int prime_index = -1;  // for Kind::prime

    bool operator<(const Token& o) const {
        if (kind != o.kind) return kind < o.kind;
        return prime_index < o.prime_index;
    }
    bool operator==(const Token& o) const { return kind == o.kind && prime_index == o.prime_index; }
};

/// Formal product of tokens with integer exponents; negative exponents are
/// legal in intermediate (fractional) expressions.
class SymbolicDivisor {
public:
    SymbolicDivisor() = default;
    void add(const Token& t, long e);
    long exponent(const Token& t) const;
    const std::map<Token, long>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    bool nonnegative() const;

    SymbolicDivisor operator+(const SymbolicDivisor& o) const;
    SymbolicDivisor operator-(const SymbolicDivisor& o) const;
    bool operator==(const SymbolicDivisor& o) const { return entries_ == o.entries_; }

private:
    std::map<Token, long> entries_;
};

/// Declared divisor data: the factorization of the congruence ideal
/// J = p_1^{n_1} ... p_r^{n_r}, the declared divisor of a_p - 1 over those
/// primes (plus an opaque coprime remainder), and the set of primes where the
/// exact-order condition (ord_p(a_p - 1) = n_p) is declared.
class TokenRing {
public:
    TokenRing(std::vector<std::string> prime_labels, std::vector<long> multiplicities,
              std::vector<long> ap_minus_1_orders, bool ap_has_remainder,
              std::vector<bool> pfour_flags);

    int rank() const { return (int)labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    long multiplicity(int i) const { return mult_[(size_t)i]; }
    long ap_order(int i) const { return ap_ord_[(size_t)i]; }
    bool ap_has_remainder() const { return ap_remainder_; }
    bool pfour(int i) const { return pfour_[(size_t)i]; }

    SymbolicDivisor j_divisor() const;
    SymbolicDivisor ap_divisor() const;  // declared orders plus the remainder token

    void require_in_box(const std::vector<long>& vertex) const;  // throws OutOfBox

    std::string token_name(const Token& t) const;
    std::string render(const SymbolicDivisor& d) const;

private:
    std::vector<std::string> labels_;
    std::vector<long> mult_;
    std::vector<long> ap_ord_;
    bool ap_remainder_;
    std::vector<bool> pfour_;
};

/// Pontryagin-dual module shapes appearing in the case tables.
struct ModuleExpr {
    enum class Shape { zero, dual_torsion, dual_cyclic_killed_by, free_rank_one };
    Shape shape = Shape::zero;
    std::vector<SymbolicDivisor> generators;  // dual_torsion: ideal generators
    int prime_index = -1;                     // dual_cyclic_killed_by / free_rank_one

    static ModuleExpr zero();
    /// DualTorsion normalizes to Zero when some generator is a unit.
    static ModuleExpr dual_torsion(std::vector<SymbolicDivisor> gens);
    static ModuleExpr dual_cyclic_killed_by(int prime_index);
    static ModuleExpr free_rank_one(int prime_index);
    bool is_zero() const { return shape == Shape::zero; }
    bool operator==(const ModuleExpr& o) const;

    std::string render(const TokenRing& ring) const;
};

/// H^0 ideal at a vertex: R-dual torsion killed by (gamma-1, prod p^(n-j))
/// for the trivial twist, zero otherwise; the maximal vertex collapses to
/// zero.
ModuleExpr h0_ideal(const TokenRing& ring, const std::vector<long>& vertex, bool twist_trivial);

enum class ControlCase { arith, augmentation, eisenstein };

struct ControlDefect {
    ModuleExpr kernel, cokernel;
    bool injective = false, surjective = false;
};

/// Kernel/cokernel case table of the specialization map. eisenstein_index is
/// 1-based and required only for the eisenstein case.
ControlDefect control_defect(const TokenRing& ring, const std::vector<long>& vertex,
                             ControlCase c, int eisenstein_index = 0);

/// The vertex-dependent multiplier sum j_i p_i of the two-variable
/// characteristic ideal.
SymbolicDivisor selmer_change_multiplier(const TokenRing& ring, const std::vector<long>& vertex);

/// One-variable characteristic divisor char(Sel_min) + J - (a_p - 1);
/// asserts the vertex dependence cancels.
SymbolicDivisor one_var_char(const TokenRing& ring, const std::vector<long>& vertex);

struct TrivialZeroVerdict {
    enum class Kind { torsion, rank_one };
    Kind kind;
    bool char_in_gamma_minus_1 = false;   // torsion case: trivial-zero marker
    std::optional<bool> free;             // rank-one: true at j = n, unknown below
    ModuleExpr module;                    // free_rank_one(R/p_i) when free
};

/// Torsion/rank dichotomy at a (pFour) prime. Throws PFourNotDeclared.
TrivialZeroVerdict trivial_zero_verdict(const TokenRing& ring, const std::vector<long>& vertex,
                                        int prime_index);

}  // namespace latticerect::iwasawa

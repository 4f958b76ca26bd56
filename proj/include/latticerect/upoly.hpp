#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "latticerect/poly.hpp"
#include "latticerect/scalars.hpp"

namespace latticerect {

/// Dense univariate polynomial over k; coefficient of t^i at index i,
/// trailing zeros trimmed. Used by the d = 1 algorithms and the
/// irreducibility probes.
class UPoly {
public:
    UPoly(BaseField field, std::vector<mpq_class> cs);
    static UPoly zero(BaseField f) { return UPoly(f, {}); }
    static UPoly constant(BaseField f, const mpq_class& c) { return UPoly(f, {c}); }
    static UPoly from_poly(const Poly& p);  // requires effective dependence on one variable
    Poly to_poly(int nvars, int var) const;

    const BaseField& field() const { return field_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    long degree() const { return (long)c_.size() - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    mpq_class lc() const;

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly scaled(const mpq_class& s) const;
    bool operator==(const UPoly& o) const { return c_ == o.c_; }

    UPoly monic() const;
    std::pair<UPoly, UPoly> divrem(const UPoly& g) const;
    UPoly mod(const UPoly& g) const { return divrem(g).second; }
    UPoly derivative() const;
    UPoly powmod(const mpz_class& e, const UPoly& m) const;

private:
    void trim();
    BaseField field_;
    std::vector<mpq_class> c_;
};

UPoly upoly_gcd(UPoly a, UPoly b);  // monic gcd
/// g = u*a + v*b with g the monic gcd.
struct UExtGcd {
    UPoly g, u, v;
};
UExtGcd upoly_ext_gcd(const UPoly& a, const UPoly& b);

/// Complete factorization over F_p: squarefree split, then distinct-degree,
/// then equal-degree (Cantor-Zassenhaus with a fixed-seed generator).
/// Returns monic irreducible factors with multiplicities, plus the leading
/// unit, sorted deterministically.
struct UFactorization {
    mpq_class unit;
    std::vector<std::pair<UPoly, long>> factors;
};
UFactorization factor_univariate_fp(const UPoly& f);

bool is_irreducible_fp(const UPoly& f);

/// Over Q: proves irreducibility by reduction modulo auxiliary primes.
/// Returns true on proof, nullopt when every attempt was inconclusive.
std::optional<bool> probe_irreducible_q(const UPoly& f);

}  // namespace latticerect

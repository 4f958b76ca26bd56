#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latticerect/fraction.hpp"
#include "latticerect/poly.hpp"

namespace latticerect {

/// Height-one prime of R = k[x]_(x): an associate-canonical irreducible
/// polynomial vanishing at the origin. For d = 1 the only such prime is the
/// variable itself, which is checked and certified at construction;
/// multivariate primes start out as verified-at-origin hints and can be
/// upgraded by the irreducibility probe.
class PrimeElem {
public:
    enum class Certificate { proven, hinted };

    static PrimeElem make(Poly p);  // validates; certifies what it can
    const Poly& poly() const { return poly_; }
    Certificate certificate() const { return cert_; }
    bool proven() const { return cert_ == Certificate::proven; }
    void mark_proven() { cert_ = Certificate::proven; }

    bool operator==(const PrimeElem& o) const { return poly_ == o.poly_; }
    bool operator<(const PrimeElem& o) const { return Poly::compare(poly_, o.poly_) < 0; }

    std::string to_string(const std::vector<std::string>& names) const {
        return poly_.to_string(names);
    }

private:
    PrimeElem(Poly p, Certificate c) : poly_(std::move(p)), cert_(c) {}
    Poly poly_;
    Certificate cert_;
};

/// Formal Z-linear combination of primes (negative exponents allowed).
class Divisor {
public:
    Divisor() = default;
    void add(const PrimeElem& p, long mult);
    long ord_of(const PrimeElem& p) const;
    const std::map<PrimeElem, long>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    bool nonnegative() const;
    long total_degree_weight() const;  // sum of multiplicities

    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    bool operator==(const Divisor& o) const { return entries_ == o.entries_; }
    bool leq(const Divisor& o) const;  // entrywise

    std::string to_string(const std::vector<std::string>& names) const;

private:
    std::map<PrimeElem, long> entries_;
};

/// Exact p-adic valuation; nullopt encodes +infinity (only for e = 0).
std::optional<long> ord_at(const PrimeElem& p, const FieldElem& e);
std::optional<long> ord_at(const PrimeElem& p, const LocalElem& e);

/// View of the DVR R_p: valuation and unit test at one prime.
struct Localization {
    PrimeElem prime;
    std::optional<long> ord(const FieldElem& e) const { return ord_at(prime, e); }
    bool is_unit(const FieldElem& e) const {
        auto o = ord_at(prime, e);
        return o.has_value() && *o == 0;
    }
};
inline Localization localize_at(const PrimeElem& p) { return Localization{p}; }

/// factor_element output: e = unit * prod p^divisor(p), with the unit a unit
/// of R. For d = 1 over F_p the complete k[t]-factorizations of numerator and
/// denominator are also reported.
struct Factorization {
    Divisor divisor;
    LocalElem unit;
    std::vector<std::pair<Poly, long>> num_factors;
    std::vector<std::pair<Poly, long>> den_factors;
};

Factorization factor_element(const LocalElem& e, const std::vector<PrimeElem>& hints);

/// Attempts to certify irreducibility by restriction to affine lines: a
/// restriction of full degree that is irreducible over the (auxiliary) finite
/// field proves irreducibility of the hint. Returns true and upgrades the
/// certificate on success; nullopt when all sampled lines were inconclusive.
std::optional<bool> probe_irreducibility(PrimeElem& p, int attempts = 12);

}  // namespace latticerect

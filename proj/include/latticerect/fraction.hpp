#pragma once

#include <optional>
#include <string>

#include "latticerect/poly.hpp"

namespace latticerect {

/// Element of K = Frac(k[x_1..x_d]) as a reduced fraction num/den with
/// associate-canonical denominator.
class FieldElem {
public:
    FieldElem(Poly num, Poly den);  // reduces; throws on zero denominator
    static FieldElem from_poly(Poly p);
    static FieldElem zero(BaseField f, int nvars);
    static FieldElem one(BaseField f, int nvars);
    static FieldElem constant(BaseField f, int nvars, const mpq_class& c);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const BaseField& field() const { return num_.field(); }
    int nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.is_constant(); }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inverse() const;
    bool operator==(const FieldElem& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    static int compare(const FieldElem& a, const FieldElem& b);

    /// Membership in R = k[x]_(x): the reduced denominator does not vanish
    /// at the origin.
    bool in_local_ring() const { return den_.constant_term() != 0; }
    bool is_local_unit() const { return in_local_ring() && num_.constant_term() != 0; }
    mpq_class residue() const;  // value at the origin; requires in_local_ring()

    /// Grammar-conforming rendering: "(num)/(den)" with integer coefficients.
    std::string to_string(const std::vector<std::string>& names) const;

private:
    Poly num_, den_;
};

/// Element of the local ring R = k[x]_(x); stored with den(0) = 1.
class LocalElem {
public:
    explicit LocalElem(const FieldElem& v);  // throws ValidationError if v is not in R
    static LocalElem from_poly(Poly p) { return LocalElem(FieldElem::from_poly(std::move(p))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    FieldElem value() const { return FieldElem(num_, den_); }
    const BaseField& field() const { return num_.field(); }
    int nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_unit() const { return num_.constant_term() != 0; }
    mpq_class residue() const { return num_.constant_term(); }

    LocalElem operator+(const LocalElem& o) const { return LocalElem(value() + o.value()); }
    LocalElem operator-(const LocalElem& o) const { return LocalElem(value() - o.value()); }
    LocalElem operator*(const LocalElem& o) const { return LocalElem(value() * o.value()); }
    bool operator==(const LocalElem& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::string to_string(const std::vector<std::string>& names) const {
        return value().to_string(names);
    }

private:
    Poly num_, den_;
};

bool is_unit(const LocalElem& e);
mpq_class residue(const LocalElem& e);

/// Divisorial gcd of fractions: the element whose divisor is the entrywise
/// minimum of the inputs' divisors. Zero inputs are skipped; all-zero gives 0.
FieldElem frac_gcd(const std::vector<FieldElem>& xs);

}  // namespace latticerect

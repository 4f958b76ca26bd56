#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latticerect/scalars.hpp"

namespace latticerect {

using Mono = std::vector<unsigned>;

unsigned mono_degree(const Mono& m);

/// Graded lexicographic order, ascending (x1 > x2 > ... on ties).
struct GradedLexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

/// Multivariate polynomial over k in d >= 1 variables, terms kept in graded-lex
/// order with no zero coefficients stored.
class Poly {
public:
    using TermMap = std::map<Mono, mpq_class, GradedLexLess>;

    Poly(BaseField field, int nvars);
    static Poly constant(BaseField field, int nvars, const mpq_class& c);
    static Poly variable(BaseField field, int nvars, int index);
    static Poly monomial(BaseField field, int nvars, const Mono& m, const mpq_class& c);

    const BaseField& field() const { return field_; }
    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    unsigned total_degree() const;  // zero poly reports 0
    long degree_in(int var) const;  // -1 for the zero polynomial
    mpq_class constant_term() const;
    mpq_class coeff(const Mono& m) const;
    std::pair<Mono, mpq_class> leading_term() const;  // largest in graded-lex

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const mpq_class& c) const;
    Poly pow(unsigned e) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Total order on polynomials of the same ring (leading terms first);
    /// used for deterministic keys.
    static int compare(const Poly& a, const Poly& b);

    /// Division with remainder by a single divisor under graded-lex:
    /// *this = q*f + r where no term of r is divisible by the leading
    /// monomial of f.
    std::pair<Poly, Poly> divrem(const Poly& f) const;
    std::optional<Poly> exact_divide(const Poly& f) const;
    bool divisible_by(const Poly& f) const { return exact_divide(f).has_value(); }

    /// Associate-canonical form: F_p monic in the graded-lex leading
    /// coefficient; Q primitive with positive leading coefficient. Returns
    /// {canonical, u} with *this == canonical.scaled(u).
    std::pair<Poly, mpq_class> normalize_assoc() const;
    Poly canonical() const { return normalize_assoc().first; }
    bool is_associate_of(const Poly& o) const;

    /// Coefficients as polynomials in the remaining variables: result[i] is
    /// the coefficient of var^i.
    std::vector<Poly> coeffs_in(int var) const;
    static Poly from_coeffs_in(int var, const std::vector<Poly>& cs, BaseField field, int nvars);

    /// Restriction to the affine line x_i = dir[i]*t + off[i]; returns dense
    /// univariate coefficients (index = power of t).
    std::vector<mpq_class> restrict_to_line(const std::vector<mpq_class>& dir,
                                            const std::vector<mpq_class>& off) const;

    std::string to_string(const std::vector<std::string>& names) const;

    void add_term(const Mono& m, const mpq_class& c);  // in-place accumulate

private:
    BaseField field_;
    int nvars_;
    TermMap terms_;
};

/// Associate-canonical gcd via primitive PRS, recursing on variables.
Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_lcm(const Poly& a, const Poly& b);

/// Exact square root: s with s*s == a when a is a perfect square in k[x],
/// sign-canonical leading coefficient; nullopt otherwise.
std::optional<Poly> poly_sqrt(const Poly& a);

}  // namespace latticerect

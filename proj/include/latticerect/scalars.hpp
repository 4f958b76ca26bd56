#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace latticerect {

/// Coefficient field k of the polynomial ring: F_p for an odd prime p, or Q.
/// Scalars of either field are carried as canonical mpq_class values
/// (F_p: the integer representative in [0, p); Q: the reduced rational).
class BaseField {
public:
    enum class Kind { prime_field, rationals };

    static BaseField fp(long p);  // throws ValidationError unless p is an odd prime >= 3
    static BaseField rationals();

    Kind kind() const { return kind_; }
    long p() const { return p_; }
    bool is_fp() const { return kind_ == Kind::prime_field; }

    bool operator==(const BaseField& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const BaseField& o) const { return !(*this == o); }

    mpq_class canon(const mpq_class& x) const;
    mpq_class add(const mpq_class& a, const mpq_class& b) const;
    mpq_class sub(const mpq_class& a, const mpq_class& b) const;
    mpq_class mul(const mpq_class& a, const mpq_class& b) const;
    mpq_class neg(const mpq_class& a) const;
    mpq_class inv(const mpq_class& a) const;  // throws on zero
    mpq_class div(const mpq_class& a, const mpq_class& b) const;
    bool is_zero(const mpq_class& a) const;

    /// Canonical square root: F_p picks min(r, p-r), Q the positive root.
    std::optional<mpq_class> sqrt(const mpq_class& a) const;

    std::string describe() const;

private:
    BaseField(Kind k, long p) : kind_(k), p_(p) {}
    Kind kind_;
    long p_;
};

std::string scalar_to_string(const mpq_class& x);

}  // namespace latticerect

#include "latticerect/scalars.hpp"

#include "latticerect/errors.hpp"

namespace latticerect {

BaseField BaseField::fp(long p) {
    if (p < 3 || p % 2 == 0)
        throw ValidationError("residue characteristic two unsupported (need an odd prime p >= 3, got " +
                              std::to_string(p) + ")");
    mpz_class pz(p);
    if (mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
        throw ValidationError("p = " + std::to_string(p) + " is not prime");
    return BaseField(Kind::prime_field, p);
}

BaseField BaseField::rationals() { return BaseField(Kind::rationals, 0); }

mpq_class BaseField::canon(const mpq_class& x) const {
    if (kind_ == Kind::rationals) {
        mpq_class r = x;
        r.canonicalize();
        return r;
    }
    // F_p: x must map to the prime field; invert the denominator mod p.
    mpq_class r = x;
    r.canonicalize();
    mpz_class p(p_);
    mpz_class num = r.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = r.get_den() % p;
    if (den == 0) throw Error("denominator divisible by p in F_p scalar");
    if (den != 1) {
        mpz_class deninv;
        if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw Error("non-invertible denominator in F_p scalar");
        num = (num * deninv) % p;
    }
    return mpq_class(num);
}

mpq_class BaseField::add(const mpq_class& a, const mpq_class& b) const { return canon(a + b); }
mpq_class BaseField::sub(const mpq_class& a, const mpq_class& b) const { return canon(a - b); }
mpq_class BaseField::mul(const mpq_class& a, const mpq_class& b) const { return canon(a * b); }
mpq_class BaseField::neg(const mpq_class& a) const { return canon(-a); }

mpq_class BaseField::inv(const mpq_class& a) const {
    mpq_class c = canon(a);
    if (c == 0) throw Error("division by zero scalar");
    if (kind_ == Kind::rationals) return mpq_class(c.get_den(), c.get_num());
    mpz_class p(p_), x = c.get_num(), r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0)
        throw Error("non-invertible scalar mod p");
    return mpq_class(r);
}

mpq_class BaseField::div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

bool BaseField::is_zero(const mpq_class& a) const { return canon(a) == 0; }

namespace {

// Tonelli-Shanks; p an odd prime, a in [0, p).
std::optional<mpz_class> sqrt_mod_p(const mpz_class& a, const mpz_class& p) {
    if (a == 0) return mpz_class(0);
    mpz_class leg, e = (p - 1) / 2;
    mpz_powm(leg.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (leg != 1) return std::nullopt;
    if (p % 4 == 3) {
        mpz_class r, ex = (p + 1) / 4;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), ex.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    // write p－1 = q·2^s with q odd
    mpz_class q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    mpz_class z = 2;
    while (true) {
        mpz_class l, e2 = (p - 1) / 2;
        mpz_powm(l.get_mpz_t(), z.get_mpz_t(), e2.get_mpz_t(), p.get_mpz_t());
        if (l == p - 1) break;
        z += 1;
    }
    mpz_class m(s), c, t, r, ex = (q + 1) / 2;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), ex.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
        mpz_class tt = t;
        long i = 0;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
            if (mpz_class(i) >= m) return std::nullopt;
        }
        mpz_class b = c, reps = m - i - 1;
        for (mpz_class k = 0; k < reps; ++k) b = (b * b) % p;
        m = i;
        c = (b * b) % p;
        t = (t * c) % p;
        r = (r * b) % p;
    }
    return r;
}

}  // namespace

std::optional<mpq_class> BaseField::sqrt(const mpq_class& a) const {
    mpq_class c = canon(a);
    if (kind_ == Kind::rationals) {
        if (c < 0) return std::nullopt;
        if (c == 0) return mpq_class(0);
        mpz_class n = c.get_num(), d = c.get_den();
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
            return std::nullopt;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return mpq_class(rn, rd);
    }
    mpz_class p(p_);
    auto r = sqrt_mod_p(c.get_num(), p);
    if (!r) return std::nullopt;
    // canonical root: the smaller of r and p-r
    mpz_class other = (p - *r) % p;
    return mpq_class(*r <= other ? *r : other);
}

std::string BaseField::describe() const {
    return kind_ == Kind::rationals ? std::string("Q") : "F_" + std::to_string(p_);
}

std::string scalar_to_string(const mpq_class& x) { return x.get_str(); }

}  // namespace latticerect

#include "latticerect/fraction.hpp"

#include "latticerect/errors.hpp"

namespace latticerect {

FieldElem::FieldElem(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("zero denominator");
    if (num_.field() != den_.field() || num_.nvars() != den_.nvars())
        throw Error("fraction over mismatched rings");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.field(), num_.nvars(), 1);
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *num_.exact_divide(g);
        den_ = *den_.exact_divide(g);
    }
    auto [dc, u] = den_.normalize_assoc();
    den_ = dc;
    num_ = num_.scaled(num_.field().inv(u));
}

FieldElem FieldElem::from_poly(Poly p) {
    BaseField f = p.field();
    int n = p.nvars();
    return FieldElem(std::move(p), Poly::constant(f, n, 1));
}

FieldElem FieldElem::zero(BaseField f, int nvars) { return from_poly(Poly(f, nvars)); }
FieldElem FieldElem::one(BaseField f, int nvars) { return constant(f, nvars, 1); }
FieldElem FieldElem::constant(BaseField f, int nvars, const mpq_class& c) {
    return from_poly(Poly::constant(f, nvars, c));
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    if (den_ == o.den_) return FieldElem(num_ + o.num_, den_);
    return FieldElem(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    if (den_ == o.den_) return FieldElem(num_ - o.num_, den_);
    return FieldElem(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    return FieldElem(num_ * o.num_, den_ * o.den_);
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
    if (o.is_zero()) throw Error("division by zero");
    return FieldElem(num_ * o.den_, den_ * o.num_);
}

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    r.num_ = -r.num_;
    return r;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    return FieldElem(den_, num_);
}

int FieldElem::compare(const FieldElem& a, const FieldElem& b) {
    int c = Poly::compare(a.num_, b.num_);
    if (c != 0) return c;
    return Poly::compare(a.den_, b.den_);
}

mpq_class FieldElem::residue() const {
    mpq_class d = den_.constant_term();
    if (d == 0) throw Error("residue of an element outside the local ring");
    return field().div(num_.constant_term(), d);
}

std::string FieldElem::to_string(const std::vector<std::string>& names) const {
    Poly n = num_, d = den_;
    if (!field().is_fp()) {
        // scale to integer coefficients so the rendering stays inside the
        // expression grammar (no '/' below top level)
        mpz_class L = 1;
        for (const auto& [m, c] : n.terms()) {
            mpz_class dd = c.get_den();
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), dd.get_mpz_t());
        }
        for (const auto& [m, c] : d.terms()) {
            mpz_class dd = c.get_den();
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), dd.get_mpz_t());
        }
        n = n.scaled(mpq_class(L));
        d = d.scaled(mpq_class(L));
    }
    if (d.is_constant() && d.constant_term() == 1) return n.to_string(names);
    return "(" + n.to_string(names) + ")/(" + d.to_string(names) + ")";
}

LocalElem::LocalElem(const FieldElem& v) : num_(v.num()), den_(v.den()) {
    if (!v.in_local_ring())
        throw ValidationError("element lies outside the local ring (denominator vanishes at the origin)");
    mpq_class c = den_.constant_term();
    if (c != 1) {
        mpq_class ci = num_.field().inv(c);
        num_ = num_.scaled(ci);
        den_ = den_.scaled(ci);
    }
}

bool is_unit(const LocalElem& e) { return e.is_unit(); }
mpq_class residue(const LocalElem& e) { return e.residue(); }

FieldElem frac_gcd(const std::vector<FieldElem>& xs) {
    std::vector<const FieldElem*> nz;
    for (const auto& x : xs)
        if (!x.is_zero()) nz.push_back(&x);
    if (nz.empty()) {
        if (xs.empty()) throw Error("gcd of empty list");
        return xs.front();
    }
    BaseField f = nz.front()->field();
    int n = nz.front()->nvars();
    Poly den = Poly::constant(f, n, 1);
    for (const auto* x : nz) den = poly_lcm(den, x->den());
    Poly g(f, n);
    for (const auto* x : nz) {
        Poly m = x->num() * *den.exact_divide(x->den());
        g = g.is_zero() ? m.canonical() : poly_gcd(g, m);
        if (g.is_constant()) break;
    }
    return FieldElem(g, den);
}

}  // namespace latticerect

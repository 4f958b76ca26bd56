#include "latticerect/upoly.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "latticerect/errors.hpp"

namespace latticerect {

UPoly::UPoly(BaseField field, std::vector<mpq_class> cs) : field_(field), c_(std::move(cs)) {
    for (auto& x : c_) x = field_.canon(x);
    trim();
}

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::from_poly(const Poly& p) {
    int var = -1;
    for (int v = 0; v < p.nvars(); ++v)
        if (p.degree_in(v) > 0) {
            if (var >= 0) throw Error("polynomial depends on more than one variable");
            var = v;
        }
    if (var < 0) var = 0;
    std::vector<mpq_class> cs((size_t)std::max(p.degree_in(var), 0L) + 1, mpq_class(0));
    for (const auto& [m, c] : p.terms()) cs[m[var]] = c;
    return UPoly(p.field(), std::move(cs));
}

Poly UPoly::to_poly(int nvars, int var) const {
    Poly r(field_, nvars);
    for (size_t i = 0; i < c_.size(); ++i) {
        Mono m(nvars, 0);
        m[var] = (unsigned)i;
        r.add_term(m, c_[i]);
    }
    return r;
}

mpq_class UPoly::lc() const {
    if (c_.empty()) throw Error("leading coefficient of zero");
    return c_.back();
}

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()), mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = field_.add(r[i], o.c_[i]);
    return UPoly(field_, std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + o.scaled(mpq_class(-1)); }

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(field_);
    std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = field_.add(r[i + j], field_.mul(c_[i], o.c_[j]));
    return UPoly(field_, std::move(r));
}

UPoly UPoly::scaled(const mpq_class& s) const {
    std::vector<mpq_class> r = c_;
    for (auto& x : r) x = field_.mul(x, s);
    return UPoly(field_, std::move(r));
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(field_.inv(lc()));
}

std::pair<UPoly, UPoly> UPoly::divrem(const UPoly& g) const {
    if (g.is_zero()) throw Error("division by zero polynomial");
    std::vector<mpq_class> r = c_;
    long dg = g.degree();
    mpq_class li = field_.inv(g.lc());
    std::vector<mpq_class> q((size_t)std::max((long)c_.size() - dg, 0L), mpq_class(0));
    for (long i = (long)r.size() - 1; i >= dg; --i) {
        if (r[(size_t)i] == 0) continue;
        mpq_class f = field_.mul(r[(size_t)i], li);
        q[(size_t)(i - dg)] = f;
        for (long j = 0; j <= dg; ++j)
            r[(size_t)(i - dg + j)] = field_.sub(r[(size_t)(i - dg + j)], field_.mul(f, g.c_[(size_t)j]));
    }
    return {UPoly(field_, std::move(q)), UPoly(field_, std::move(r))};
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return zero(field_);
    std::vector<mpq_class> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = field_.mul(c_[i], mpq_class((long)i));
    return UPoly(field_, std::move(r));
}

UPoly UPoly::powmod(const mpz_class& e, const UPoly& m) const {
    UPoly base = mod(m), acc = constant(field_, 1);
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = (acc * base).mod(m);
        base = (base * base).mod(m);
        k >>= 1;
    }
    return acc;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a.mod(b);
        a = b;
        b = r;
    }
    return a.monic();
}

UExtGcd upoly_ext_gcd(const UPoly& a, const UPoly& b) {
    BaseField f = a.field();
    UPoly r0 = a, r1 = b;
    UPoly u0 = UPoly::constant(f, 1), u1 = UPoly::zero(f);
    UPoly v0 = UPoly::zero(f), v1 = UPoly::constant(f, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        UPoly nu = u0 - q * u1, nv = v0 - q * v1;
        r0 = r1; r1 = r;
        u0 = u1; u1 = nu;
        v0 = v1; v1 = nv;
    }
    if (r0.is_zero()) throw Error("ext_gcd(0, 0)");
    mpq_class s = f.inv(r0.lc());
    return {r0.scaled(s), u0.scaled(s), v0.scaled(s)};
}

namespace {

int upoly_compare(const UPoly& a, const UPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    for (size_t i = ca.size(); i-- > 0;) {
        int c = cmp(ca[i], cb[i]);
        if (c != 0) return c;
    }
    return 0;
}

// f(t) with f' = 0 over F_p is g(t)^p; Frobenius fixes the prime field, so
// the p-th root just reindexes coefficients.
UPoly pth_root_fp(const UPoly& f) {
    long p = f.field().p();
    std::vector<mpq_class> r(f.coeffs().size() / (size_t)p + 1, mpq_class(0));
    for (size_t i = 0; i < f.coeffs().size(); ++i)
        if (f.coeffs()[i] != 0) r[i / (size_t)p] = f.coeffs()[i];
    return UPoly(f.field(), std::move(r));
}

void squarefree_fp(const UPoly& f, long mult, std::map<long, std::vector<UPoly>>& out) {
    BaseField field = f.field();
    long p = field.p();
    UPoly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree_fp(pth_root_fp(f), mult * p, out);
        return;
    }
    UPoly g = upoly_gcd(f, fp);
    UPoly w = f.divrem(g).first.monic();
    long i = 1;
    while (w.degree() > 0) {
        UPoly y = upoly_gcd(w, g);
        UPoly z = w.divrem(y).first.monic();
        if (z.degree() > 0) out[mult * i].push_back(z);
        w = y;
        g = g.divrem(y).first.monic();
        ++i;
    }
    if (g.degree() > 0) squarefree_fp(pth_root_fp(g), mult * p, out);
}

UPoly x_minus(const UPoly& h, BaseField f) {  // h - t
    return h - UPoly(f, {mpq_class(0), mpq_class(1)});
}

// Distinct-degree split of a squarefree monic f: list of (product, degree).
std::vector<std::pair<UPoly, long>> ddf(UPoly f) {
    BaseField field = f.field();
    mpz_class q(field.p());
    std::vector<std::pair<UPoly, long>> out;
    UPoly h = UPoly(field, {mpq_class(0), mpq_class(1)});
    long d = 0;
    while (f.degree() >= 2 * (d + 1)) {
        ++d;
        h = h.powmod(q, f);
        UPoly g = upoly_gcd(x_minus(h, field), f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f.divrem(g).first.monic();
            h = h.mod(f);
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

// Cantor-Zassenhaus split of a product of irreducibles of fixed degree d.
void edf(const UPoly& f, long d, std::mt19937_64& rng, std::vector<UPoly>& out) {
    BaseField field = f.field();
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    mpz_class q(field.p()), qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), (unsigned long)d);
    mpz_class e = (qd - 1) / 2;
    while (true) {
        std::vector<mpq_class> cs((size_t)f.degree());
        for (auto& c : cs) c = mpq_class((long)(rng() % (unsigned long)field.p()));
        UPoly a(field, std::move(cs));
        if (a.is_zero()) continue;
        UPoly g = upoly_gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(f.divrem(g).first.monic(), d, rng, out);
            return;
        }
        UPoly b = a.powmod(e, f) - UPoly::constant(field, 1);
        g = upoly_gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(f.divrem(g).first.monic(), d, rng, out);
            return;
        }
    }
}

}  // namespace

UFactorization factor_univariate_fp(const UPoly& f) {
    if (!f.field().is_fp()) throw Error("factor_univariate_fp over Q");
    if (f.is_zero()) throw Error("factoring the zero polynomial");
    UFactorization out;
    out.unit = f.lc();
    if (f.degree() == 0) return out;
    std::map<long, std::vector<UPoly>> sq;
    squarefree_fp(f.monic(), 1, sq);
    std::mt19937_64 rng(0x1a77cef2u);  // fixed seed keeps the split deterministic
    std::vector<std::pair<UPoly, long>> factors;
    for (const auto& [mult, parts] : sq)
        for (const UPoly& part : parts)
            for (const auto& [prod, d] : ddf(part)) {
                std::vector<UPoly> irr;
                edf(prod, d, rng, irr);
                for (const UPoly& g : irr) factors.emplace_back(g, mult);
            }
    std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
        return upoly_compare(a.first, b.first) < 0;
    });
    // merge associates
    for (auto& [g, m] : factors) {
        if (!out.factors.empty() && out.factors.back().first == g)
            out.factors.back().second += m;
        else
            out.factors.emplace_back(g, m);
    }
    return out;
}

bool is_irreducible_fp(const UPoly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    BaseField field = f.field();
    mpz_class q(field.p());
    long n = f.degree();
    UPoly fm = f.monic();
    UPoly x = UPoly(field, {mpq_class(0), mpq_class(1)});
    // Rabin: x^(q^n) == x mod f, and gcd(x^(q^(n/l)) - x, f) = 1 for primes l | n.
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), (unsigned long)n);
    if (!(x.powmod(qn, fm) == x.mod(fm))) return false;
    for (long l = 2; l * l <= n || l <= n; ++l) {
        if (l > n) break;
        if (n % l != 0) continue;
        bool lprime = true;
        for (long m = 2; m * m <= l; ++m)
            if (l % m == 0) lprime = false;
        if (!lprime) continue;
        mpz_class qk;
        mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), (unsigned long)(n / l));
        UPoly h = x.powmod(qk, fm) - x.mod(fm);
        if (upoly_gcd(h, fm).degree() != 0) return false;
    }
    return true;
}

std::optional<bool> probe_irreducible_q(const UPoly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    static const long aux[] = {10007, 10009, 10037, 10039, 31013, 65537};
    // clear denominators first
    mpz_class den_lcm = 1;
    for (const auto& c : f.coeffs()) {
        mpz_class d = c.get_den();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    for (long q : aux) {
        BaseField fq = BaseField::fp(q);
        mpz_class lcnum = f.lc().get_num() * den_lcm / f.lc().get_den();
        if (lcnum % q == 0) continue;  // degree would drop
        std::vector<mpq_class> cs;
        cs.reserve(f.coeffs().size());
        bool ok = true;
        for (const auto& c : f.coeffs()) {
            mpz_class n = c.get_num() * (den_lcm / c.get_den());
            cs.push_back(mpq_class(n % q));
        }
        if (!ok) continue;
        if (is_irreducible_fp(UPoly(fq, std::move(cs)))) return true;
    }
    return std::nullopt;
}

}  // namespace latticerect

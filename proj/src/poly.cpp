#include "latticerect/poly.hpp"

#include <algorithm>
#include <cassert>

#include "latticerect/errors.hpp"

namespace latticerect {

unsigned mono_degree(const Mono& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

bool GradedLexLess::operator()(const Mono& a, const Mono& b) const {
    unsigned da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

Poly::Poly(BaseField field, int nvars) : field_(field), nvars_(nvars) {
    if (nvars < 1) throw ValidationError("polynomial ring needs at least one variable");
}

Poly Poly::constant(BaseField field, int nvars, const mpq_class& c) {
    Poly r(field, nvars);
    r.add_term(Mono(nvars, 0), c);
    return r;
}

Poly Poly::variable(BaseField field, int nvars, int index) {
    if (index < 0 || index >= nvars) throw ValidationError("variable index out of range");
    Mono m(nvars, 0);
    m[index] = 1;
    Poly r(field, nvars);
    r.add_term(m, mpq_class(1));
    return r;
}

Poly Poly::monomial(BaseField field, int nvars, const Mono& m, const mpq_class& c) {
    Poly r(field, nvars);
    r.add_term(m, c);
    return r;
}

void Poly::add_term(const Mono& m, const mpq_class& c) {
    assert((int)m.size() == nvars_);
    mpq_class cc = field_.canon(c);
    if (cc == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, cc);
        return;
    }
    it->second = field_.add(it->second, cc);
    if (it->second == 0) terms_.erase(it);
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
}

unsigned Poly::total_degree() const {
    return terms_.empty() ? 0u : mono_degree(terms_.rbegin()->first);
}

long Poly::degree_in(int var) const {
    if (terms_.empty()) return -1;
    long d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, (long)m[var]);
    return d;
}

mpq_class Poly::constant_term() const { return coeff(Mono(nvars_, 0)); }

mpq_class Poly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

std::pair<Mono, mpq_class> Poly::leading_term() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return *terms_.rbegin();
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, field_.neg(c));
    return r;
}

Poly Poly::operator-() const {
    Poly r(field_, nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.neg(c));
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(field_, nvars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Mono m(nvars_);
            for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, field_.mul(ca, cb));
        }
    return r;
}

Poly Poly::scaled(const mpq_class& c) const {
    Poly r(field_, nvars_);
    mpq_class cc = field_.canon(c);
    if (cc == 0) return r;
    for (const auto& [m, coef] : terms_) r.terms_.emplace(m, field_.mul(coef, cc));
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = constant(field_, nvars_, 1);
    Poly b = *this;
    while (e) {
        if (e & 1u) r = r * b;
        b = b * b;
        e >>= 1u;
    }
    return r;
}

bool Poly::operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
}

int Poly::compare(const Poly& a, const Poly& b) {
    auto ia = a.terms_.rbegin(), ib = b.terms_.rbegin();
    GradedLexLess less;
    for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
        if (ia->first != ib->first) return less(ia->first, ib->first) ? -1 : 1;
        int c = cmp(ia->second, ib->second);
        if (c != 0) return c;
    }
    if (ia != a.terms_.rend()) return 1;
    if (ib != b.terms_.rend()) return -1;
    return 0;
}

namespace {
bool mono_divides(const Mono& a, const Mono& b) {  // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}
Mono mono_div(const Mono& b, const Mono& a) {
    Mono r(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
    return r;
}
}  // namespace

std::pair<Poly, Poly> Poly::divrem(const Poly& f) const {
    if (f.is_zero()) throw Error("division by zero polynomial");
    Poly q(field_, nvars_), rem(field_, nvars_), h = *this;
    auto [fm, fc] = f.leading_term();
    mpq_class fcinv = field_.inv(fc);
    while (!h.is_zero()) {
        auto [hm, hc] = h.leading_term();
        if (mono_divides(fm, hm)) {
            Mono qm = mono_div(hm, fm);
            mpq_class qc = field_.mul(hc, fcinv);
            Poly t = monomial(field_, nvars_, qm, qc);
            q.add_term(qm, qc);
            h = h - t * f;
        } else {
            rem.add_term(hm, hc);
            h.terms_.erase(hm);
        }
    }
    return {q, rem};
}

std::optional<Poly> Poly::exact_divide(const Poly& f) const {
    if (is_zero()) return Poly(field_, nvars_);
    auto [q, r] = divrem(f);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

std::pair<Poly, mpq_class> Poly::normalize_assoc() const {
    if (is_zero()) return {*this, mpq_class(1)};
    if (field_.is_fp()) {
        mpq_class lc = leading_term().second;
        return {scaled(field_.inv(lc)), lc};
    }
    // Q: primitive integer coefficients, positive leading coefficient.
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_class n = abs(c.get_num());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        mpz_class d = c.get_den();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    mpq_class content(num_gcd, den_lcm);
    content.canonicalize();
    if (leading_term().second < 0) content = -content;
    return {scaled(field_.inv(content)), content};
}

bool Poly::is_associate_of(const Poly& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    return canonical() == o.canonical();
}

std::vector<Poly> Poly::coeffs_in(int var) const {
    long d = std::max(degree_in(var), 0L);
    std::vector<Poly> out((size_t)d + 1, Poly(field_, nvars_));
    for (const auto& [m, c] : terms_) {
        Mono mm = m;
        unsigned e = mm[var];
        mm[var] = 0;
        out[e].add_term(mm, c);
    }
    return out;
}

Poly Poly::from_coeffs_in(int var, const std::vector<Poly>& cs, BaseField field, int nvars) {
    Poly r(field, nvars);
    for (size_t e = 0; e < cs.size(); ++e)
        for (const auto& [m, c] : cs[e].terms()) {
            Mono mm = m;
            mm[var] += (unsigned)e;
            r.add_term(mm, c);
        }
    return r;
}

std::vector<mpq_class> Poly::restrict_to_line(const std::vector<mpq_class>& dir,
                                              const std::vector<mpq_class>& off) const {
    std::vector<mpq_class> acc(total_degree() + 1, mpq_class(0));
    for (const auto& [m, c] : terms_) {
        // expand c * prod (dir_i t + off_i)^{e_i}
        std::vector<mpq_class> term{field_.canon(c)};
        for (int i = 0; i < nvars_; ++i)
            for (unsigned e = 0; e < m[i]; ++e) {
                std::vector<mpq_class> next(term.size() + 1, mpq_class(0));
                for (size_t k = 0; k < term.size(); ++k) {
                    next[k] = field_.add(next[k], field_.mul(term[k], off[i]));
                    next[k + 1] = field_.add(next[k + 1], field_.mul(term[k], dir[i]));
                }
                term = std::move(next);
            }
        for (size_t k = 0; k < term.size(); ++k) acc[k] = field_.add(acc[k], term[k]);
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    return acc;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        mpq_class c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        mpq_class a = neg ? mpq_class(-c) : c;
        std::string monostr;
        for (int i = 0; i < nvars_; ++i) {
            if (it->first[i] == 0) continue;
            if (!monostr.empty()) monostr += "*";
            monostr += names[i];
            if (it->first[i] > 1) monostr += "^" + std::to_string(it->first[i]);
        }
        if (monostr.empty()) {
            out += a.get_str();
        } else {
            if (a != 1) out += a.get_str() + "*";
            out += monostr;
        }
    }
    return out;
}

namespace {

// Pseudo-remainder of f by g seen as univariate in var: lc(g)^delta * f = q*g + r.
Poly pseudo_rem(const Poly& f, const Poly& g, int var) {
    BaseField field = f.field();
    int n = f.nvars();
    std::vector<Poly> fc = f.coeffs_in(var);
    std::vector<Poly> gc = g.coeffs_in(var);
    long dg = (long)gc.size() - 1;
    Poly lg = gc.back();
    std::vector<Poly> r = fc;
    long dr = (long)r.size() - 1;
    long delta = dr - dg + 1;
    long steps = 0;
    while (dr >= dg && !(dr == 0 && r[0].is_zero())) {
        Poly lead = r[(size_t)dr];
        if (lead.is_zero()) {
            r.pop_back();
            --dr;
            continue;
        }
        // r <- lg*r - lead*var^(dr-dg)*g
        for (auto& c : r) c = lg * c;
        for (long i = 0; i <= dg; ++i)
            r[(size_t)(dr - dg + i)] = r[(size_t)(dr - dg + i)] - lead * gc[(size_t)i];
        ++steps;
        while (!r.empty() && r.back().is_zero()) r.pop_back();
        dr = (long)r.size() - 1;
    }
    Poly rem = Poly::from_coeffs_in(var, r, field, n);
    for (long i = steps; i < delta; ++i) rem = rem * lg;
    return rem;
}

int pick_main_var(const Poly& a, const Poly& b) {
    for (int v = 0; v < a.nvars(); ++v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
    return -1;
}

// Content of f with respect to var: gcd of its coefficient polynomials.
Poly content_in(const Poly& f, int var);

Poly gcd_impl(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.canonical();
    if (b.is_zero()) return a.canonical();
    if (a.is_constant() || b.is_constant())
        return Poly::constant(a.field(), a.nvars(), 1);
    int var = pick_main_var(a, b);
    Poly ca = content_in(a, var), cb = content_in(b, var);
    Poly f = *a.exact_divide(ca), g = *b.exact_divide(cb);
    Poly cg = gcd_impl(ca, cb);
    if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
    // primitive PRS
    while (true) {
        Poly r = pseudo_rem(f, g, var);
        if (r.is_zero()) break;
        Poly cr = content_in(r, var);
        r = *r.exact_divide(cr);
        f = g;
        g = r;
        if (g.degree_in(var) == 0) {
            g = Poly::constant(a.field(), a.nvars(), 1);
            break;
        }
    }
    return (cg * g).canonical();
}

Poly content_in(const Poly& f, int var) {
    Poly c(f.field(), f.nvars());
    for (const Poly& coef : f.coeffs_in(var)) {
        if (coef.is_zero()) continue;
        c = c.is_zero() ? coef.canonical() : gcd_impl(c, coef);
        if (c.is_constant()) break;
    }
    return c.is_zero() ? Poly::constant(f.field(), f.nvars(), 1) : c;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw Error("gcd(0, 0) undefined");
    if (a.field() != b.field() || a.nvars() != b.nvars())
        throw Error("gcd over mismatched rings");
    return gcd_impl(a, b);
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) throw Error("lcm with zero polynomial");
    Poly g = poly_gcd(a, b);
    return (a * *b.exact_divide(g)).canonical();
}

std::optional<Poly> poly_sqrt(const Poly& a) {
    if (a.is_zero()) return a;
    BaseField field = a.field();
    int n = a.nvars();
    auto [lm, lc] = a.leading_term();
    Mono half(lm.size());
    for (size_t i = 0; i < lm.size(); ++i) {
        if (lm[i] % 2 != 0) return std::nullopt;
        half[i] = lm[i] / 2;
    }
    auto rootc = field.sqrt(lc);
    if (!rootc) return std::nullopt;
    Poly s = Poly::monomial(field, n, half, *rootc);
    mpq_class twice = field.mul(mpq_class(2), *rootc);
    Poly r = a - s * s;
    Mono last = half;
    GradedLexLess less;
    while (!r.is_zero()) {
        auto [rm, rc] = r.leading_term();
        if (!mono_divides(half, rm)) return std::nullopt;
        Mono next = mono_div(rm, half);
        if (!less(next, last)) return std::nullopt;  // must strictly decrease
        s.add_term(next, field.div(rc, twice));
        last = next;
        r = a - s * s;
    }
    return s;
}

}  // namespace latticerect

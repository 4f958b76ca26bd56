#include "latticerect/divisor.hpp"

#include <random>

#include "latticerect/errors.hpp"
#include "latticerect/upoly.hpp"

namespace latticerect {

PrimeElem PrimeElem::make(Poly p) {
    if (p.is_zero() || p.is_constant())
        throw ValidationError("prime hint must be a nonconstant polynomial");
    if (p.constant_term() != 0)
        throw ValidationError("prime hint does not vanish at the origin (it is a unit of R)");
    Poly c = p.canonical();
    if (c.nvars() == 1) {
        // the only height-one prime of k[t]_(t) is (t)
        if (c != Poly::variable(c.field(), 1, 0))
            throw ValidationError("reducible univariate prime hint (only the variable is prime in R)");
        return PrimeElem(std::move(c), Certificate::proven);
    }
    if (c.total_degree() == 1) return PrimeElem(std::move(c), Certificate::proven);
    return PrimeElem(std::move(c), Certificate::hinted);
}

void Divisor::add(const PrimeElem& p, long mult) {
    if (mult == 0) return;
    auto it = entries_.find(p);
    if (it == entries_.end()) {
        entries_.emplace(p, mult);
        return;
    }
    it->second += mult;
    if (it->second == 0) entries_.erase(it);
}

long Divisor::ord_of(const PrimeElem& p) const {
    auto it = entries_.find(p);
    return it == entries_.end() ? 0 : it->second;
}

bool Divisor::nonnegative() const {
    for (const auto& [p, m] : entries_)
        if (m < 0) return false;
    return true;
}

long Divisor::total_degree_weight() const {
    long s = 0;
    for (const auto& [p, m] : entries_) s += m;
    return s;
}

Divisor Divisor::operator+(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [p, m] : o.entries_) r.add(p, m);
    return r;
}

Divisor Divisor::operator-(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [p, m] : o.entries_) r.add(p, -m);
    return r;
}

bool Divisor::leq(const Divisor& o) const {
    for (const auto& [p, m] : entries_)
        if (m > o.ord_of(p)) return false;
    for (const auto& [p, m] : o.entries_)
        if (ord_of(p) > m) return false;
    return true;
}

std::string Divisor::to_string(const std::vector<std::string>& names) const {
    if (entries_.empty()) return "(1)";
    std::string out;
    for (const auto& [p, m] : entries_) {
        if (!out.empty()) out += " * ";
        out += "(" + p.to_string(names) + ")";
        if (m != 1) out += "^" + std::to_string(m);
    }
    return out;
}

namespace {

long ord_in_poly(const Poly& f, const Poly& p) {
    long v = 0;
    Poly h = f;
    while (true) {
        auto q = h.exact_divide(p);
        if (!q) return v;
        h = *q;
        ++v;
    }
}

}  // namespace

std::optional<long> ord_at(const PrimeElem& p, const FieldElem& e) {
    if (e.is_zero()) return std::nullopt;
    return ord_in_poly(e.num(), p.poly()) - ord_in_poly(e.den(), p.poly());
}

std::optional<long> ord_at(const PrimeElem& p, const LocalElem& e) {
    return ord_at(p, e.value());
}

Factorization factor_element(const LocalElem& e, const std::vector<PrimeElem>& hints) {
    if (e.is_zero()) throw Error("factor_element of zero");
    BaseField field = e.field();
    int n = e.nvars();
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));

    Divisor div;
    Poly num = e.num();

    if (n == 1) {
        PrimeElem t = PrimeElem::make(Poly::variable(field, 1, 0));
        long v = ord_in_poly(num, t.poly());
        if (v > 0) {
            div.add(t, v);
            num = *num.exact_divide(t.poly().pow((unsigned)v));
        }
        Factorization out{div, LocalElem(FieldElem(num, e.den())), {}, {}};
        if (field.is_fp()) {
            for (const Poly& side : {e.num(), e.den()}) {
                auto fs = factor_univariate_fp(UPoly::from_poly(side));
                auto& dst = (&side == &e.num()) ? out.num_factors : out.den_factors;
                for (const auto& [g, m] : fs.factors) dst.emplace_back(g.to_poly(1, 0), m);
            }
        }
        // round-trip check
        FieldElem prod = out.unit.value();
        for (const auto& [p, m] : div.entries())
            prod = prod * FieldElem::from_poly(p.poly().pow((unsigned)m));
        if (!(prod == e.value())) throw Error("factorization round-trip failed");
        return out;
    }

    // multivariate: pull out each hint to maximal power; the cofactor must be
    // a unit of R, i.e. keep a nonzero constant term
    for (size_t i = 0; i < hints.size(); ++i)
        for (size_t j = i + 1; j < hints.size(); ++j)
            if (!poly_gcd(hints[i].poly(), hints[j].poly()).is_constant())
                throw ValidationError("prime hints are not pairwise non-associate: " +
                                      hints[i].to_string(names) + " vs " + hints[j].to_string(names));
    for (const PrimeElem& h : hints) {
        long v = ord_in_poly(num, h.poly());
        if (v > 0) {
            div.add(h, v);
            num = *num.exact_divide(h.poly().pow((unsigned)v));
        }
    }
    if (num.constant_term() == 0)
        throw HintInsufficient("unexplained non-unit cofactor after extracting hints: " +
                               num.to_string(names));
    Factorization out{div, LocalElem(FieldElem(num, e.den())), {}, {}};
    FieldElem prod = out.unit.value();
    for (const auto& [p, m] : div.entries())
        prod = prod * FieldElem::from_poly(p.poly().pow((unsigned)m));
    if (!(prod == e.value())) throw Error("factorization round-trip failed");
    return out;
}

std::optional<bool> probe_irreducibility(PrimeElem& p, int attempts) {
    if (p.proven()) return true;
    const Poly& f = p.poly();
    BaseField field = f.field();
    int n = f.nvars();
    unsigned deg = f.total_degree();
    std::mt19937_64 rng(0x9e3779b9u);  // fixed: the probe is deterministic
    for (int a = 0; a < attempts; ++a) {
        std::vector<mpq_class> dir(n), off(n);
        for (int i = 0; i < n; ++i) {
            if (field.is_fp()) {
                dir[i] = mpq_class((long)(rng() % (unsigned long)field.p()));
                off[i] = mpq_class((long)(rng() % (unsigned long)field.p()));
            } else {
                dir[i] = mpq_class((long)(rng() % 19) - 9);
                off[i] = mpq_class((long)(rng() % 19) - 9);
            }
        }
        auto cs = f.restrict_to_line(dir, off);
        UPoly u(field, cs);
        if (u.degree() != (long)deg) continue;  // degree dropped: inconclusive line
        // a full-degree irreducible restriction certifies irreducibility: any
        // nontrivial factorization would restrict to one of lower total degree
        if (field.is_fp()) {
            if (is_irreducible_fp(u)) {
                p.mark_proven();
                return true;
            }
        } else {
            auto r = probe_irreducible_q(u);
            if (r.has_value() && *r) {
                p.mark_proven();
                return true;
            }
        }
    }
    return std::nullopt;
}

}  // namespace latticerect

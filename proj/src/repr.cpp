#include "latticerect/repr.hpp"

#include <algorithm>
#include <cassert>

#include "latticerect/errors.hpp"

namespace latticerect {

namespace {

struct MatrixLess {
    bool operator()(const Matrix2& a, const Matrix2& b) const { return Matrix2::compare(a, b) < 0; }
};

bool assoc_equal(const FieldElem& a, const FieldElem& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.num().is_associate_of(b.num()) && a.den() == b.den();
}

}  // namespace

Representation::Representation(BaseField field, int nvars, std::vector<std::string> var_names,
                               std::vector<std::pair<std::string, Matrix2>> generators,
                               ClosurePolicy policy)
    : field_(field), nvars_(nvars), var_names_(std::move(var_names)),
      generators_(std::move(generators)), policy_(policy) {
    if ((int)var_names_.size() != nvars_) throw ValidationError("variable name count mismatch");
    if (policy_.word_bound < 1 || policy_.window < 1)
        throw ValidationError("closure policy requires word bound and window >= 1");
    letters_ = generators_;
    for (const auto& [label, m] : generators_) {
        if (m.det().is_zero()) throw ValidationError("singular generator: " + label);
        letters_.emplace_back(label + "^-1", m.inverse());
    }
}

Representation Representation::with_policy(ClosurePolicy p) const {
    return Representation(field_, nvars_, var_names_, generators_, p);
}

Closure close_monoid(const Representation& rep) {
    Closure out;
    out.stabilized = false;
    out.rounds = 0;
    Matrix2 id = Matrix2::identity(rep.field(), rep.nvars());
    std::map<Matrix2, size_t, MatrixLess> seen;
    out.elements.push_back({"1", id, 0});
    seen.emplace(id, 0);
    std::vector<size_t> frontier{0};
    for (int len = 1; len <= rep.policy().word_bound; ++len) {
        std::vector<size_t> next;
        for (size_t idx : frontier)
            for (const auto& [label, m] : rep.letters()) {
                Matrix2 prod = out.elements[idx].mat * m;
                if (seen.count(prod)) continue;
                std::string word = out.elements[idx].length == 0 ? label
                                                                 : out.elements[idx].word + "*" + label;
                seen.emplace(prod, out.elements.size());
                next.push_back(out.elements.size());
                out.elements.push_back({word, prod, len});
            }
        out.rounds = len;
        if (next.empty()) {
            // closed under every letter: the whole group has been listed
            out.stabilized = true;
            break;
        }
        frontier = std::move(next);
    }
    return out;
}

namespace {

/// Column eigenvector for eigenvalue lambda, scaled so the first nonzero
/// coordinate is 1.
std::array<FieldElem, 2> eigenvector(const Matrix2& m, const FieldElem& lambda) {
    BaseField f = lambda.field();
    int n = lambda.nvars();
    FieldElem zero = FieldElem::zero(f, n), one = FieldElem::one(f, n);
    std::array<FieldElem, 2> v{zero, zero};
    const FieldElem& a = m.at(0, 0);
    const FieldElem& b = m.at(0, 1);
    const FieldElem& c = m.at(1, 0);
    const FieldElem& d = m.at(1, 1);
    if (!b.is_zero()) {
        v = {b, lambda - a};
    } else if (!c.is_zero()) {
        v = {lambda - d, c};
    } else {
        // diagonal; the eigenvalues are a and d
        if (a == lambda) return {one, zero};
        return {zero, one};
    }
    if (!v[0].is_zero()) {
        FieldElem s = v[0];
        return {one, v[1] / s};
    }
    return {zero, one};
}

}  // namespace

RegularElementData find_regular(const Representation& rep, const Closure& closure) {
    BaseField f = rep.field();
    int n = rep.nvars();
    FieldElem two = FieldElem::constant(f, n, 2);
    FieldElem four = FieldElem::constant(f, n, 4);
    std::string obstructions;
    for (const GroupElement& g : closure.elements) {
        FieldElem tr = g.mat.trace(), det = g.mat.det();
        if (!tr.in_local_ring() || !det.in_local_ring()) {
            obstructions += "  " + g.word + ": characteristic polynomial not over R\n";
            continue;
        }
        FieldElem disc = tr * tr - four * det;
        if (disc.is_zero()) {
            obstructions += "  " + g.word + ": residually equal eigenvalues (zero discriminant)\n";
            continue;
        }
        auto sn = poly_sqrt(disc.num());
        auto sd = poly_sqrt(disc.den());
        if (!sn || !sd) {
            obstructions += "  " + g.word + ": discriminant is not a square in R\n";
            continue;
        }
        FieldElem s(*sn, *sd);
        if (!s.in_local_ring()) {
            obstructions += "  " + g.word + ": square root of discriminant not in R\n";
            continue;
        }
        mpq_class rs = s.residue();
        if (rs == 0) {
            obstructions += "  " + g.word + ": residually equal eigenvalues\n";
            continue;
        }
        // sign-canonical root: residue in the canonical half of k^x
        bool flip;
        if (f.is_fp())
            flip = rs.get_num() * 2 > f.p();
        else
            flip = rs < 0;
        if (flip) s = -s;
        FieldElem lp = (tr + s) / two, lpp = (tr - s) / two;
        if (!lp.in_local_ring() || !lpp.in_local_ring()) {
            obstructions += "  " + g.word + ": eigenvalues not in R\n";
            continue;
        }
        auto vp = eigenvector(g.mat, lp);
        auto vpp = eigenvector(g.mat, lpp);
        Matrix2 basis(vp[0], vpp[0], vp[1], vpp[1]);
        if (basis.det().is_zero()) {
            obstructions += "  " + g.word + ": eigenvectors degenerate\n";
            continue;
        }
        FieldElem gap = lp - lpp;
        Matrix2 id = Matrix2::identity(f, n);
        Matrix2 ip = (g.mat - id.scaled(lpp)).scaled(gap.inverse());
        Matrix2 ipp = (g.mat - id.scaled(lp)).scaled((-gap).inverse());
        // the section-3 identities must hold on the nose
        assert(ip + ipp == id);
        assert(ip * ip == ip);
        assert((ip * ipp) == Matrix2(FieldElem::zero(f, n), FieldElem::zero(f, n),
                                     FieldElem::zero(f, n), FieldElem::zero(f, n)));
        Matrix2 check = basis.inverse() * g.mat * basis;
        assert(check.at(0, 1).is_zero() && check.at(1, 0).is_zero());
        assert(check.at(0, 0) == lp && check.at(1, 1) == lpp);
        return RegularElementData{g.word, g.mat, LocalElem(lp), LocalElem(lpp), basis, ip, ipp};
    }
    throw NoRegularElement("no regular element within word bound " +
                           std::to_string(rep.policy().word_bound) + "; obstructions:\n" + obstructions);
}

OffDiagSample sample_offdiag(const Representation& rep, const Closure& closure,
                             const RegularElementData& regular) {
    OffDiagSample out{FieldElem::zero(rep.field(), rep.nvars()),
                      FieldElem::zero(rep.field(), rep.nvars()), false, {}, {}, {}, {}};
    Matrix2 einv = regular.eigenbasis.inverse();
    std::vector<FieldElem> bs, cs;
    std::vector<std::pair<FieldElem, FieldElem>> gcd_by_len;  // after each word length
    int cur_len = 0;
    auto flush = [&]() {
        FieldElem bg = bs.empty() ? FieldElem::zero(rep.field(), rep.nvars()) : frac_gcd(bs);
        FieldElem cg = cs.empty() ? FieldElem::zero(rep.field(), rep.nvars()) : frac_gcd(cs);
        gcd_by_len.emplace_back(bg, cg);
    };
    for (const GroupElement& g : closure.elements) {
        while (g.length > cur_len) {
            flush();
            ++cur_len;
        }
        Matrix2 conj = einv * g.mat * regular.eigenbasis;
        out.a_list.push_back(conj.at(0, 0));
        out.b_list.push_back(conj.at(0, 1));
        out.c_list.push_back(conj.at(1, 0));
        out.d_list.push_back(conj.at(1, 1));
        if (!conj.at(0, 1).is_zero()) bs.push_back(conj.at(0, 1));
        if (!conj.at(1, 0).is_zero()) cs.push_back(conj.at(1, 0));
    }
    flush();
    out.b_gcd = gcd_by_len.back().first;
    out.c_gcd = gcd_by_len.back().second;
    int window = rep.policy().window;
    if ((int)gcd_by_len.size() > window) {
        out.stabilized = true;
        for (size_t i = gcd_by_len.size() - (size_t)window; i < gcd_by_len.size(); ++i) {
            if (!assoc_equal(gcd_by_len[i].first, gcd_by_len[i - 1].first) ||
                !assoc_equal(gcd_by_len[i].second, gcd_by_len[i - 1].second))
                out.stabilized = false;
        }
    }
    return out;
}

HypothesesReport check_hypotheses(const Representation& rep, const Closure& closure,
                                  const RegularElementData& regular, const OffDiagSample& sample) {
    HypothesesReport rpt;
    rpt.trace_integral = true;
    for (const GroupElement& g : closure.elements) {
        if (!g.mat.trace().in_local_ring()) {
            rpt.trace_integral = false;
            rpt.trace_witness = g.word;
            break;
        }
    }

    // (Red): every product b(g)c(g') has residue 0, i.e. all b residues vanish
    // or all c residues vanish. Entries outside R are handled through the
    // reduced product.
    const auto& words = closure.elements;
    auto entry_res = [](const FieldElem& x) -> std::optional<mpq_class> {
        if (x.is_zero()) return mpq_class(0);
        if (!x.in_local_ring()) return std::nullopt;
        return x.residue();
    };
    std::vector<size_t> b_bad, c_bad;  // defined-nonzero or undefined residues
    for (size_t i = 0; i < sample.b_list.size(); ++i) {
        auto r = entry_res(sample.b_list[i]);
        if (!r || *r != 0) b_bad.push_back(i);
    }
    for (size_t i = 0; i < sample.c_list.size(); ++i) {
        auto r = entry_res(sample.c_list[i]);
        if (!r || *r != 0) c_bad.push_back(i);
    }
    rpt.red = true;
    for (size_t i : b_bad) {
        for (size_t j : c_bad) {
            FieldElem prod = sample.b_list[i] * sample.c_list[j];
            if (!prod.in_local_ring() || prod.residue() != 0) {
                rpt.red = false;
                rpt.red_witness = "b(" + words[i].word + ")*c(" + words[j].word + ")";
                break;
            }
        }
        if (!rpt.red) break;
    }

    // (G-dist): some element separates the residual diagonal characters
    rpt.g_dist = false;
    for (size_t i = 0; i < sample.a_list.size(); ++i) {
        const FieldElem& a = sample.a_list[i];
        const FieldElem& d = sample.d_list[i];
        if (a.in_local_ring() && d.in_local_ring() && a.residue() != d.residue()) {
            rpt.g_dist = true;
            break;
        }
    }
    (void)regular;

    rpt.ir = !sample.b_gcd.is_zero() && !sample.c_gcd.is_zero();
    return rpt;
}

ReducibilityData analyze_reducibility(const Representation& rep, const Closure& closure,
                                      const RegularElementData& regular,
                                      const std::vector<PrimeElem>& hints,
                                      const OffDiagSample* precomputed) {
    OffDiagSample local = precomputed ? *precomputed : sample_offdiag(rep, closure, regular);
    if (local.b_gcd.is_zero() || local.c_gcd.is_zero())
        throw NotIrreducible(std::string("representation is reducible: ") +
                             (local.b_gcd.is_zero() ? "all b(g) vanish" : "all c(g) vanish") +
                             " in the eigenbasis");
    FieldElem J = local.b_gcd * local.c_gcd;
    if (!J.in_local_ring())
        throw ValidationError("B*C lies outside R; the trace of the representation is not integral");

    // the coordinate hyperplanes are always available (and proven) primes
    std::vector<PrimeElem> all_hints = hints;
    if (rep.nvars() >= 2) {
        for (int v = 0; v < rep.nvars(); ++v) {
            PrimeElem pv = PrimeElem::make(Poly::variable(rep.field(), rep.nvars(), v));
            bool dup = false;
            for (const auto& h : all_hints)
                if (h == pv) dup = true;
            if (!dup) all_hints.push_back(pv);
        }
    }

    ReducibilityData out{regular,
                         local.b_gcd,
                         local.c_gcd,
                         LocalElem(J),
                         {},
                         {},
                         {},
                         {},
                         local.stabilized};
    Factorization fact = factor_element(out.J, all_hints);
    out.j_divisor = fact.divisor;
    for (const auto& [p, m] : out.j_divisor.entries()) {
        if (m < 1) throw Error("negative exponent in J divisor");
        out.primes.emplace_back(p, m);
    }
    for (size_t i = 0; i < closure.elements.size(); ++i) {
        out.theta.emplace(closure.elements[i].word, local.a_list[i]);
        out.theta_prime.emplace(closure.elements[i].word, local.d_list[i]);
    }
    return out;
}

}  // namespace latticerect

#include "latticerect/lattice.hpp"

#include <cassert>

#include "latticerect/errors.hpp"

namespace latticerect {

Lattice::Lattice(Matrix2 b) : basis(std::move(b)) {
    if (basis.det().is_zero()) throw ValidationError("lattice basis is singular");
}

std::optional<std::string> stability_violation(const Lattice& L, const Representation& rep) {
    Matrix2 binv = L.basis.inverse();
    for (const auto& [label, m] : rep.letters()) {
        Matrix2 conj = binv * m * L.basis;
        if (!conj.entries_in_R()) return label;
    }
    return std::nullopt;
}

std::optional<FieldElem> homothety_witness(const Lattice& L1, const Lattice& L2) {
    BaseField f = L1.basis.at(0, 0).field();
    int n = L1.basis.at(0, 0).nvars();
    Matrix2 N = L1.basis.inverse() * L2.basis;
    Poly D = Poly::constant(f, n, 1);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!N.at(r, c).is_zero()) D = poly_lcm(D, N.at(r, c).den());
    Poly g(f, n);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            const FieldElem& x = N.at(r, c);
            if (x.is_zero()) continue;
            Poly m = x.num() * *D.exact_divide(x.den());
            g = g.is_zero() ? m.canonical() : poly_gcd(g, m);
        }
    FieldElem s(g, D);
    Matrix2 M = N.scaled(s.inverse());
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!M.at(r, c).in_local_ring()) return std::nullopt;
    if (!M.det().is_local_unit()) return std::nullopt;
    return s;
}

namespace {

bool vector_in_lattice(const Matrix2& basis_inv, const std::array<FieldElem, 2>& v) {
    auto c = basis_inv.apply(v);
    return c[0].in_local_ring() && c[1].in_local_ring();
}

/// Solve r0*A0 + r1*A1 = G with polynomial r_i of total degree <= bound,
/// by linear algebra over k on the coefficients.
bool bezout_search(const Poly& A0, const Poly& A1, const Poly& G, unsigned bound) {
    BaseField f = A0.field();
    int n = A0.nvars();
    std::vector<Mono> unknowns;
    {
        // all monomials of total degree <= bound
        Mono m(n, 0);
        while (true) {
            if (mono_degree(m) <= bound) unknowns.push_back(m);
            int i = n - 1;
            while (i >= 0 && m[(size_t)i] == bound) {
                m[(size_t)i] = 0;
                --i;
            }
            if (i < 0) break;
            ++m[(size_t)i];
        }
    }
    std::map<Mono, size_t, GradedLexLess> rows;  // product monomial -> equation index
    auto row_of = [&](const Mono& m) {
        auto it = rows.find(m);
        if (it != rows.end()) return it->second;
        size_t k = rows.size();
        rows.emplace(m, k);
        return k;
    };
    struct Entry {
        size_t row, col;
        mpq_class v;
    };
    std::vector<Entry> entries;
    for (int which = 0; which < 2; ++which) {
        const Poly& A = which == 0 ? A0 : A1;
        for (size_t u = 0; u < unknowns.size(); ++u)
            for (const auto& [am, ac] : A.terms()) {
                Mono prod(am.size());
                for (size_t i = 0; i < am.size(); ++i) prod[i] = am[i] + unknowns[u][i];
                entries.push_back({row_of(prod), which * unknowns.size() + u, ac});
            }
    }
    for (const auto& [gm, gc] : G.terms()) row_of(gm);
    size_t nrows = rows.size(), ncols = 2 * unknowns.size();
    std::vector<std::vector<mpq_class>> mat(nrows, std::vector<mpq_class>(ncols + 1, mpq_class(0)));
    for (const auto& e : entries) mat[e.row][e.col] = f.add(mat[e.row][e.col], e.v);
    for (const auto& [gm, gc] : G.terms()) mat[rows[gm]][ncols] = gc;
    // Gaussian elimination
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < nrows; ++col) {
        size_t piv = rank;
        while (piv < nrows && mat[piv][col] == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(mat[piv], mat[rank]);
        mpq_class inv = f.inv(mat[rank][col]);
        for (size_t j = col; j <= ncols; ++j) mat[rank][j] = f.mul(mat[rank][j], inv);
        for (size_t r = 0; r < nrows; ++r) {
            if (r == rank || mat[r][col] == 0) continue;
            mpq_class factor = mat[r][col];
            for (size_t j = col; j <= ncols; ++j)
                mat[r][j] = f.sub(mat[r][j], f.mul(factor, mat[rank][j]));
        }
        ++rank;
    }
    for (size_t r = 0; r < nrows; ++r) {
        bool allzero = true;
        for (size_t c = 0; c < ncols; ++c)
            if (mat[r][c] != 0) allzero = false;
        if (allzero && mat[r][ncols] != 0) return false;  // inconsistent
    }
    return true;
}

bool certify_component(const FieldElem& a0, const FieldElem& a1, const FieldElem& gen) {
    BaseField f = gen.field();
    int n = gen.nvars();
    Poly delta = Poly::constant(f, n, 1);
    for (const FieldElem* x : {&a0, &a1, &gen})
        if (!x->is_zero()) delta = poly_lcm(delta, x->den());
    auto clear = [&](const FieldElem& x) {
        if (x.is_zero()) return Poly(f, n);
        return x.num() * *delta.exact_divide(x.den());
    };
    Poly A0 = clear(a0), A1 = clear(a1), G = clear(gen);
    unsigned bound = 2 * std::max({A0.total_degree(), A1.total_degree(), G.total_degree()});
    return bezout_search(A0, A1, G, bound);
}

}  // namespace

EigenSplit eigen_split(const Lattice& L, const RegularElementData& regular) {
    BaseField f = L.basis.at(0, 0).field();
    int n = L.basis.at(0, 0).nvars();
    Matrix2 binv = L.basis.inverse();
    std::array<std::array<FieldElem, 2>, 2> eigvecs = {
        std::array<FieldElem, 2>{regular.eigenbasis.at(0, 0), regular.eigenbasis.at(1, 0)},
        std::array<FieldElem, 2>{regular.eigenbasis.at(0, 1), regular.eigenbasis.at(1, 1)}};
    std::array<FieldElem, 2> gens = {FieldElem::zero(f, n), FieldElem::zero(f, n)};
    bool certified = true;
    for (int xi = 0; xi < 2; ++xi) {
        const Matrix2& idem = xi == 0 ? regular.idem_psi : regular.idem_psi_prime;
        std::vector<FieldElem> alphas;
        for (int i = 0; i < 2; ++i) {
            std::array<FieldElem, 2> w{L.basis.at(0, i), L.basis.at(1, i)};
            auto u = idem.apply(w);
            if (!vector_in_lattice(binv, u))
                throw NotG0Stable("idempotent image of basis vector " + std::to_string(i + 1) +
                                  " leaves the lattice");
            // read the coefficient along v_xi
            int k = eigvecs[(size_t)xi][0].is_zero() ? 1 : 0;
            FieldElem alpha = u[(size_t)k] / eigvecs[(size_t)xi][(size_t)k];
            assert(u[(size_t)(1 - k)] == alpha * eigvecs[(size_t)xi][(size_t)(1 - k)]);
            if (!alpha.is_zero()) alphas.push_back(alpha);
        }
        if (alphas.empty()) throw Error("degenerate eigen component");
        gens[(size_t)xi] = frac_gcd(alphas);
        FieldElem a0 = alphas.size() > 0 ? alphas[0] : FieldElem::zero(f, n);
        FieldElem a1 = alphas.size() > 1 ? alphas[1] : FieldElem::zero(f, n);
        if (!certify_component(a0, a1, gens[(size_t)xi])) certified = false;
    }
    EigenSplit out{gens[0], gens[1], certified, true, true};
    // pure vectors and spanning: equality of L with the direct sum
    std::array<FieldElem, 2> p0{gens[0] * eigvecs[0][0], gens[0] * eigvecs[0][1]};
    std::array<FieldElem, 2> p1{gens[1] * eigvecs[1][0], gens[1] * eigvecs[1][1]};
    out.pure_vectors_contained = vector_in_lattice(binv, p0) && vector_in_lattice(binv, p1);
    Matrix2 P(p0[0], p1[0], p0[1], p1[1]);
    Matrix2 back = P.inverse() * L.basis;
    out.components_generate = back.entries_in_R();
    return out;
}

QuotientData quotient_data(const Lattice& sub, const Lattice& sup, const Representation& rep,
                           const Divisor& mod_divisor, const std::vector<PrimeElem>& hints) {
    Matrix2 M = sup.basis.inverse() * sub.basis;
    if (!M.entries_in_R()) throw NotContained("sub-lattice is not contained in the super-lattice");
    FieldElem delta = M.det();
    QuotientData out;
    out.char_ideal = factor_element(LocalElem(delta), hints).divisor;
    if (delta.is_local_unit()) {
        out.cyclic = true;  // zero module
        out.generator_index = -1;
        return out;
    }
    // Over the local ring, coker(M) is cyclic iff M has a unit entry; the
    // image of basis vector i generates iff the other row carries the unit.
    auto unit_at = [&](int r, int c) { return M.at(r, c).is_local_unit(); };
    int gen_index = -1, pivot_col = -1;
    if (unit_at(1, 0) || unit_at(1, 1)) {
        gen_index = 0;
        pivot_col = unit_at(1, 0) ? 0 : 1;
    } else if (unit_at(0, 0) || unit_at(0, 1)) {
        gen_index = 1;
        pivot_col = unit_at(0, 0) ? 0 : 1;
    } else {
        throw NotCyclic("quotient needs two generators (no unit entry in the relation matrix)");
    }
    out.cyclic = true;
    out.generator_index = gen_index;
    // chi is unique modulo the ideal (det) + (mod_divisor), divisorially the
    // entrywise minimum
    out.character_modulus = out.char_ideal;
    if (!mod_divisor.empty()) {
        Divisor m;
        for (const auto& [p, e] : out.char_ideal.entries())
            m.add(p, std::min(e, mod_divisor.ord_of(p)));
        out.character_modulus = m;
    }
    Matrix2 sup_inv = sup.basis.inverse();
    for (const auto& [label, g] : rep.generators()) {
        std::array<FieldElem, 2> w{sup.basis.at(0, gen_index), sup.basis.at(1, gen_index)};
        auto y = sup_inv.apply(g.apply(w));
        if (!y[0].in_local_ring() || !y[1].in_local_ring())
            throw Error("super-lattice not stable under generator " + label);
        FieldElem chi = gen_index == 0
                            ? y[0] - y[1] * M.at(0, pivot_col) / M.at(1, pivot_col)
                            : y[1] - y[0] * M.at(1, pivot_col) / M.at(0, pivot_col);
        // the class of y - chi*e_gen must vanish in R^2 / M R^2
        std::array<FieldElem, 2> z = y;
        z[(size_t)gen_index] = z[(size_t)gen_index] - chi;
        Matrix2 adj(M.at(1, 1), -M.at(0, 1), -M.at(1, 0), M.at(0, 0));
        auto wz = adj.apply(z);
        assert((wz[0] / delta).in_local_ring() && (wz[1] / delta).in_local_ring());
        out.character.emplace(label, chi);
    }
    return out;
}

std::vector<ResidualLine> residual_stable_lines(const Lattice& L, const Representation& rep) {
    if (rep.nvars() != 1)
        throw ValidationError("residual line enumeration is a d = 1 operation");
    if (!rep.field().is_fp())
        throw ValidationError("residual line enumeration needs a finite residue field");
    BaseField f = rep.field();
    long p = f.p();
    Matrix2 binv = L.basis.inverse();
    std::vector<std::array<mpq_class, 2>> residuals;  // entries of each conj mod m, row-major
    for (const auto& [label, m] : rep.letters()) {
        Matrix2 conj = binv * m * L.basis;
        if (!conj.entries_in_R())
            throw ValidationError("lattice is not stable under " + label);
        residuals.push_back({conj.at(0, 0).residue(), conj.at(0, 1).residue()});
        residuals.push_back({conj.at(1, 0).residue(), conj.at(1, 1).residue()});
    }
    std::vector<std::array<mpq_class, 2>> lines;
    for (long a = 0; a < p; ++a) lines.push_back({mpq_class(1), mpq_class(a)});
    lines.push_back({mpq_class(0), mpq_class(1)});
    std::vector<ResidualLine> out;
    Poly varpi = Poly::variable(f, 1, 0);
    for (const auto& v : lines) {
        bool stable = true;
        for (size_t g = 0; g + 1 < residuals.size() && stable; g += 2) {
            mpq_class w0 = f.add(f.mul(residuals[g][0], v[0]), f.mul(residuals[g][1], v[1]));
            mpq_class w1 = f.add(f.mul(residuals[g + 1][0], v[0]), f.mul(residuals[g + 1][1], v[1]));
            // w must stay on the line: w x v = 0
            if (f.sub(f.mul(w0, v[1]), f.mul(w1, v[0])) != 0) stable = false;
        }
        if (!stable) continue;
        // preimage of the line: basis * [[v0, 0], [v1, pi]] (or the mirrored
        // shape when the line is (0 : 1))
        FieldElem v0 = FieldElem::constant(f, 1, v[0]);
        FieldElem v1 = FieldElem::constant(f, 1, v[1]);
        FieldElem pi = FieldElem::from_poly(varpi);
        FieldElem zero = FieldElem::zero(f, 1);
        Matrix2 T = v[0] != 0 ? Matrix2(v0, zero, v1, pi) : Matrix2(zero, pi, v1, zero);
        out.push_back(ResidualLine{v, Lattice(L.basis * T)});
    }
    return out;
}

}  // namespace latticerect

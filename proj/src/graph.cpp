#include "latticerect/graph.hpp"

#include <algorithm>
#include <set>

#include "latticerect/errors.hpp"

namespace latticerect {

namespace {

std::vector<std::vector<long>> box_coords(const std::vector<long>& dims) {
    std::vector<std::vector<long>> out;
    std::vector<long> c(dims.size(), 0);
    while (true) {
        out.push_back(c);
        size_t i = dims.size();
        while (i-- > 0) {
            if (c[i] < dims[i]) {
                ++c[i];
                std::fill(c.begin() + (long)i + 1, c.end(), 0L);
                break;
            }
            if (i == 0) return out;
        }
        if (dims.empty()) return out;
    }
}

std::string coords_str(const std::vector<long>& c) {
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

}  // namespace

size_t RectGraph::index_of(const std::vector<long>& coords) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == coords) return i;
    throw OutOfBox("vertex " + coords_str(coords) + " outside the rectangle");
}

RectGraph build_rect(const std::vector<long>& dims) {
    for (long d : dims)
        if (d < 0) throw ValidationError("rectangle dimensions must be nonnegative");
    RectGraph g;
    g.dims = dims;
    g.vertices = box_coords(dims);
    for (size_t i = 0; i < g.vertices.size(); ++i)
        for (size_t ax = 0; ax < dims.size(); ++ax) {
            std::vector<long> nb = g.vertices[i];
            ++nb[ax];
            if (nb[ax] > dims[ax]) continue;
            g.edges.emplace_back(i, g.index_of(nb));
            g.edge_axis.push_back((int)ax);
        }
    return g;
}

Lattice tidy_lattice(const Lattice& L) {
    BaseField f = L.basis.at(0, 0).field();
    int n = L.basis.at(0, 0).nvars();
    Poly D = Poly::constant(f, n, 1);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!L.basis.at(r, c).is_zero()) D = poly_lcm(D, L.basis.at(r, c).den());
    Matrix2 cleared = L.basis.scaled(FieldElem::from_poly(D));
    Poly g(f, n);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!cleared.at(r, c).is_zero())
                g = g.is_zero() ? cleared.at(r, c).num().canonical()
                                : poly_gcd(g, cleared.at(r, c).num());
    if (!g.is_zero() && !g.is_constant())
        cleared = cleared.scaled(FieldElem::from_poly(g).inverse());
    return Lattice(cleared);
}

size_t LatticeGraph::index_of(const std::vector<long>& coords) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].coords == coords) return i;
    throw OutOfBox("vertex " + coords_str(coords) + " outside the box");
}

Lattice LatticeGraph::formula_lattice(const std::vector<long>& candidate_coords) const {
    FieldElem x = red.B;
    size_t k = 0;
    for (const auto& [p, n] : red.primes) {
        FieldElem pf = FieldElem::from_poly(p.poly());
        long e = candidate_coords[k++];
        for (long i = 0; i < e; ++i) x = x / pf;
        for (long i = 0; i < -e; ++i) x = x * pf;
    }
    Matrix2 diag = Matrix2::diag(x, FieldElem::one(x.field(), x.nvars()));
    return Lattice(red.regular.eigenbasis * diag);
}

LatticeGraph build_lattice_graph(const Representation& rep, const ReducibilityData& red) {
    LatticeGraph g{red, {}, {}, {}, {}, 0, false, {}, {}};
    for (const auto& [p, n] : red.primes) g.candidate_dims.push_back(n);

    auto candidates = box_coords(g.candidate_dims);
    std::vector<std::vector<long>> stable;
    for (const auto& j : candidates)
        if (is_stable(g.formula_lattice(j), rep)) stable.push_back(j);
    if (stable.empty())
        throw NotABox("no stable lattice in the candidate family; hypotheses must fail");

    size_t r = g.candidate_dims.size();
    std::vector<long> lo(r, 0), hi(r, 0);
    for (size_t i = 0; i < r; ++i) {
        lo[i] = hi[i] = stable.front()[i];
        for (const auto& j : stable) {
            lo[i] = std::min(lo[i], j[i]);
            hi[i] = std::max(hi[i], j[i]);
        }
    }
    size_t expected = 1;
    for (size_t i = 0; i < r; ++i) expected *= (size_t)(hi[i] - lo[i] + 1);
    if (stable.size() != expected)
        throw NotABox("stable candidates do not fill a sub-box (" + std::to_string(stable.size()) +
                      " of " + std::to_string(expected) + " vertices)");
    std::set<std::vector<long>> stable_set(stable.begin(), stable.end());
    for (const auto& j : stable)
        for (size_t i = 0; i < r; ++i) {
            std::vector<long> nb = j;
            if (nb[i] < hi[i]) {
                ++nb[i];
                if (!stable_set.count(nb)) throw NotABox("stable candidate set is not a box");
            }
        }

    // keep axes of positive width; re-base coordinates at the box minimum
    std::vector<size_t> kept;
    for (size_t i = 0; i < r; ++i)
        if (hi[i] > lo[i]) kept.push_back(i);
    g.box_offset = lo;
    for (size_t i : kept) {
        g.dims.push_back(hi[i] - lo[i]);
        g.primes.emplace_back(red.primes[i].first, hi[i] - lo[i]);
    }
    g.candidate_shrunk = (g.dims != g.candidate_dims);

    RectGraph rect = build_rect(g.dims);
    for (const auto& c : rect.vertices) {
        std::vector<long> orig = lo;
        for (size_t k = 0; k < kept.size(); ++k) orig[kept[k]] += c[k];
        Lattice L = g.formula_lattice(orig);
        g.vertices.push_back(GraphVertex{c, L, tidy_lattice(L)});
    }
    for (size_t e = 0; e < rect.edges.size(); ++e) {
        g.edges.push_back(GraphEdge{rect.edges[e].first, rect.edges[e].second, rect.edge_axis[e]});
    }
    g.base_index = g.index_of(std::vector<long>(g.dims.size(), 0));
    return g;
}

BfsResult dvr_segment_bfs(const Representation& rep, const Lattice& start, long max_classes) {
    if (rep.nvars() != 1 || !rep.field().is_fp())
        throw ValidationError("the segment walk is a d = 1 / F_p oracle");
    if (auto v = stability_violation(start, rep))
        throw ValidationError("start lattice is not stable (violated by " + *v + ")");
    BfsResult out;
    out.classes.push_back(start);
    FieldElem pi = FieldElem::from_poly(Poly::variable(rep.field(), 1, 0));
    std::vector<size_t> frontier{0};
    auto find_class = [&](const Lattice& L) -> long {
        for (size_t i = 0; i < out.classes.size(); ++i)
            if (homothety_witness(out.classes[i], L)) return (long)i;
        return -1;
    };
    while (!frontier.empty()) {
        std::vector<size_t> next;
        for (size_t idx : frontier) {
            Lattice cur = out.classes[idx];
            std::vector<Lattice> neighbors;
            for (const auto& line : residual_stable_lines(cur, rep)) neighbors.push_back(line.preimage);
            // upward moves: index-pi superlattices are pi^-1 times the
            // index-pi sublattices
            size_t downs = neighbors.size();
            for (size_t i = 0; i < downs; ++i)
                neighbors.push_back(Lattice(neighbors[i].basis.scaled(pi.inverse())));
            for (const Lattice& nb : neighbors) {
                long found = find_class(nb);
                if (found < 0) {
                    if ((long)out.classes.size() + 1 > max_classes)
                        throw NonTermination(
                            "class walk exceeded " + std::to_string(max_classes) +
                            " homothety classes; the representation is reducible or the "
                            "count bound is violated");
                    found = (long)out.classes.size();
                    out.classes.push_back(nb);
                    next.push_back((size_t)found);
                }
                if (found != (long)idx) {
                    auto e = std::minmax((size_t)found, idx);
                    if (!std::count(out.edges.begin(), out.edges.end(),
                                    std::make_pair(e.first, e.second)))
                        out.edges.emplace_back(e.first, e.second);
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

std::vector<Lattice> enumerate_stable_classes_dvr(const Representation& rep, long max_det_ord) {
    if (rep.nvars() != 1 || !rep.field().is_fp())
        throw ValidationError("echelon enumeration is a d = 1 / F_p oracle");
    BaseField f = rep.field();
    long p = f.p();
    FieldElem zero = FieldElem::zero(f, 1);
    std::vector<Lattice> classes;
    auto known = [&](const Lattice& L) {
        for (const auto& c : classes)
            if (homothety_witness(c, L)) return true;
        return false;
    };
    for (long a = 0; a <= max_det_ord; ++a)
        for (long b = 0; a + b <= max_det_ord; ++b) {
            // columns (t^a, c), (0, t^b) with c running over k[t]/(t^b)
            long count = 1;
            for (long i = 0; i < b; ++i) count *= p;
            for (long code = 0; code < count; ++code) {
                Poly c(f, 1);
                long rest = code;
                for (long i = 0; i < b; ++i) {
                    long digit = rest % p;
                    rest /= p;
                    if (digit) c.add_term(Mono{(unsigned)i}, mpq_class(digit));
                }
                Matrix2 basis(FieldElem::from_poly(Poly::variable(f, 1, 0).pow((unsigned)a)), zero,
                              FieldElem(c, Poly::constant(f, 1, 1)),
                              FieldElem::from_poly(Poly::variable(f, 1, 0).pow((unsigned)b)));
                Lattice L(basis);
                if (!is_stable(L, rep)) continue;
                if (!known(L)) classes.push_back(L);
            }
        }
    return classes;
}

bool VerificationReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

namespace {

FieldElem conj_entry(const ReducibilityData& red, const Matrix2& g, int r, int c) {
    Matrix2 conj = red.regular.eigenbasis.inverse() * g * red.regular.eigenbasis;
    return conj.at(r, c);
}

bool congruent_mod(const FieldElem& a, const FieldElem& b, const PrimeElem& p, long e) {
    FieldElem d = a - b;
    if (d.is_zero()) return true;
    auto o = ord_at(p, d);
    return o.has_value() && *o >= e;
}

/// chi == theta modulo the given divisor, entrywise.
bool character_matches(const std::map<std::string, FieldElem>& chi, const ReducibilityData& red,
                       const Representation& rep, const Divisor& modulus) {
    for (const auto& [label, g] : rep.generators()) {
        FieldElem theta = conj_entry(red, g, 0, 0);
        auto it = chi.find(label);
        if (it == chi.end()) return false;
        for (const auto& [p, e] : modulus.entries())
            if (!congruent_mod(it->second, theta, p, e)) return false;
    }
    return true;
}

std::vector<PrimeElem> graph_hints(const LatticeGraph& g) {
    std::vector<PrimeElem> hints;
    for (const auto& [p, n] : g.red.primes) hints.push_back(p);
    return hints;
}

}  // namespace

VerificationReport verify_theorem_gal(const LatticeGraph& graph, const Representation& rep) {
    VerificationReport rpt;
    std::vector<PrimeElem> hints = graph_hints(graph);
    const auto& verts = graph.vertices;

    {  // (a) every edge carries a single-prime exponent-1 cyclic theta-quotient
        CheckResult c{"a", "edge quotients are R/p with character theta", true, ""};
        for (const auto& e : graph.edges) {
            const PrimeElem& p = graph.primes[(size_t)e.axis].first;
            Divisor expected;
            expected.add(p, 1);
            try {
                QuotientData qd = quotient_data(verts[e.from].lattice, verts[e.to].lattice, rep,
                                                expected, hints);
                if (!(qd.char_ideal == expected) || !qd.cyclic ||
                    !character_matches(qd.character, graph.red, rep, expected)) {
                    c.passed = false;
                    c.detail = "edge " + coords_str(verts[e.from].coords) + " - " +
                               coords_str(verts[e.to].coords);
                    break;
                }
            } catch (const Error& err) {
                c.passed = false;
                c.detail = err.what();
                break;
            }
        }
        rpt.checks.push_back(c);
    }

    {  // (b) comparable pairs: quotient divisor sum(j'-j) p_i, character theta,
       //     additivity in towers
        CheckResult c{"b", "comparable pairs carry sum (j'-j) p_i with theta, additively", true, ""};
        auto leq = [](const std::vector<long>& a, const std::vector<long>& b) {
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i] > b[i]) return false;
            return true;
        };
        std::vector<Divisor> pair_div(verts.size() * verts.size());
        for (size_t i = 0; i < verts.size() && c.passed; ++i)
            for (size_t j = 0; j < verts.size() && c.passed; ++j) {
                if (i == j || !leq(verts[i].coords, verts[j].coords)) continue;
                Divisor expected;
                for (size_t ax = 0; ax < graph.dims.size(); ++ax)
                    expected.add(graph.primes[ax].first, verts[j].coords[ax] - verts[i].coords[ax]);
                try {
                    QuotientData qd =
                        quotient_data(verts[i].lattice, verts[j].lattice, rep, expected, hints);
                    pair_div[i * verts.size() + j] = qd.char_ideal;
                    if (!(qd.char_ideal == expected) || !qd.cyclic ||
                        !character_matches(qd.character, graph.red, rep, expected)) {
                        c.passed = false;
                        c.detail = "pair " + coords_str(verts[i].coords) + " <= " +
                                   coords_str(verts[j].coords);
                    }
                } catch (const Error& err) {
                    c.passed = false;
                    c.detail = err.what();
                }
            }
        if (c.passed) {  // tower additivity
            for (size_t i = 0; i < verts.size() && c.passed; ++i)
                for (size_t j = 0; j < verts.size() && c.passed; ++j)
                    for (size_t k = 0; k < verts.size() && c.passed; ++k) {
                        if (i == j || j == k || i == k) continue;
                        if (!leq(verts[i].coords, verts[j].coords) ||
                            !leq(verts[j].coords, verts[k].coords))
                            continue;
                        Divisor lhs = pair_div[i * verts.size() + k];
                        Divisor rhs =
                            pair_div[i * verts.size() + j] + pair_div[j * verts.size() + k];
                        if (!(lhs == rhs)) {
                            c.passed = false;
                            c.detail = "tower " + coords_str(verts[i].coords) + " <= " +
                                       coords_str(verts[j].coords) + " <= " +
                                       coords_str(verts[k].coords);
                        }
                    }
        }
        rpt.checks.push_back(c);
    }

    {  // (c) incomparable pairs admit no cyclic theta-quotient containment
        CheckResult c{"c", "incomparable pairs admit no theta-cyclic containment", true, ""};
        auto leq = [](const std::vector<long>& a, const std::vector<long>& b) {
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i] > b[i]) return false;
            return true;
        };
        std::vector<long> sdims;
        for (const auto& [p, n] : graph.primes) sdims.push_back(n);
        auto scalars = box_coords(sdims);
        for (size_t i = 0; i < verts.size() && c.passed; ++i)
            for (size_t j = 0; j < verts.size() && c.passed; ++j) {
                if (i == j) continue;
                if (leq(verts[i].coords, verts[j].coords) || leq(verts[j].coords, verts[i].coords))
                    continue;
                for (const auto& es : scalars) {
                    FieldElem s = FieldElem::one(rep.field(), rep.nvars());
                    for (size_t ax = 0; ax < es.size(); ++ax)
                        for (long k = 0; k < es[ax]; ++k)
                            s = s * FieldElem::from_poly(graph.primes[ax].first.poly());
                    Lattice scaled(verts[i].lattice.basis.scaled(s));
                    try {
                        QuotientData qd =
                            quotient_data(scaled, verts[j].lattice, rep, Divisor{}, hints);
                        if (qd.cyclic && qd.char_ideal.leq(graph.red.j_divisor) &&
                            character_matches(qd.character, graph.red, rep, qd.char_ideal)) {
                            c.passed = false;
                            c.detail = "containment " + coords_str(verts[i].coords) + " in " +
                                       coords_str(verts[j].coords);
                            break;
                        }
                    } catch (const NotContained&) {
                    } catch (const NotCyclic&) {
                    }
                }
            }
        rpt.checks.push_back(c);
    }

    {  // (d) out-of-box neighbors of boundary vertices are unstable
        CheckResult c{"d", "out-of-box neighbors fail stability with a witness", true, ""};
        for (const auto& v : verts) {
            for (size_t ax = 0; ax < graph.dims.size(); ++ax)
                for (long dir : {-1L, 1L}) {
                    std::vector<long> nb = v.coords;
                    nb[ax] += dir;
                    if (nb[ax] >= 0 && nb[ax] <= graph.dims[ax]) continue;
                    // back to original candidate coordinates
                    std::vector<long> orig = graph.box_offset;
                    size_t ki = 0;
                    for (size_t full = 0; full < graph.candidate_dims.size(); ++full) {
                        if (ki < graph.primes.size() &&
                            graph.red.primes[full].first == graph.primes[ki].first) {
                            orig[full] += nb[ki];
                            ++ki;
                        }
                    }
                    Lattice L = graph.formula_lattice(orig);
                    auto witness = stability_violation(L, rep);
                    if (!witness) {
                        c.passed = false;
                        c.detail = "neighbor " + coords_str(nb) + " of " + coords_str(v.coords) +
                                   " is stable";
                    }
                }
            if (!c.passed) break;
        }
        rpt.checks.push_back(c);
    }

    if (rep.nvars() == 1 && rep.field().is_fp()) {
        // (e) the BFS oracle finds exactly the box classes
        CheckResult c{"e", "segment walk agrees with the box class-by-class", true, ""};
        try {
            long bound = 1;
            for (long d : graph.dims) bound += d;
            BfsResult bfs = dvr_segment_bfs(rep, verts[graph.base_index].lattice, bound);
            if (bfs.classes.size() != verts.size()) {
                c.passed = false;
                c.detail = "walk found " + std::to_string(bfs.classes.size()) + " classes, box has " +
                           std::to_string(verts.size());
            } else {
                for (const auto& cls : bfs.classes) {
                    bool matched = false;
                    for (const auto& v : verts)
                        if (homothety_witness(v.lattice, cls) && homothety_witness(cls, v.lattice))
                            matched = true;
                    if (!matched) {
                        c.passed = false;
                        c.detail = "walk class missing from the box";
                    }
                }
            }
        } catch (const Error& err) {
            c.passed = false;
            c.detail = err.what();
        }
        rpt.checks.push_back(c);

        // (f) J in (pi) iff the residual semisimplification splits
        CheckResult cf{"f", "J in (pi) iff residual semisimplification splits", true, ""};
        bool j_in_m = !graph.red.j_divisor.empty();
        auto lines = residual_stable_lines(verts[graph.base_index].lattice, rep);
        bool splits = !lines.empty();
        if (j_in_m != splits) {
            cf.passed = false;
            cf.detail = std::string("J ") + (j_in_m ? "divisible" : "trivial") + " but residual rep " +
                        (splits ? "splits" : "does not split");
        } else if (splits) {
            // the two residual characters must be distinct
            BaseField f = rep.field();
            Matrix2 binv = verts[graph.base_index].lattice.basis.inverse();
            bool distinct = false;
            for (const auto& [label, m] : rep.letters()) {
                Matrix2 conj = binv * m * verts[graph.base_index].lattice.basis;
                const auto& v = lines.front().dir;
                mpq_class w0 = f.add(f.mul(conj.at(0, 0).residue(), v[0]),
                                     f.mul(conj.at(0, 1).residue(), v[1]));
                mpq_class w1 = f.add(f.mul(conj.at(1, 0).residue(), v[0]),
                                     f.mul(conj.at(1, 1).residue(), v[1]));
                mpq_class mu = v[0] != 0 ? f.div(w0, v[0]) : f.div(w1, v[1]);
                mpq_class nu = f.sub(conj.trace().residue(), mu);
                if (mu != nu) distinct = true;
            }
            if (!distinct) {
                cf.passed = false;
                cf.detail = "residual characters coincide";
            }
        }
        rpt.checks.push_back(cf);
    }

    {  // (g) vertex map is injective on homothety classes
        CheckResult c{"g", "distinct vertices are non-homothetic", true, ""};
        for (size_t i = 0; i < verts.size() && c.passed; ++i)
            for (size_t j = i + 1; j < verts.size(); ++j)
                if (homothety_witness(verts[i].lattice, verts[j].lattice)) {
                    c.passed = false;
                    c.detail = coords_str(verts[i].coords) + " ~ " + coords_str(verts[j].coords);
                    break;
                }
        rpt.checks.push_back(c);
    }

    return rpt;
}

}  // namespace latticerect

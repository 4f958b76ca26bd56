#pragma once

#include <string>
#include <vector>

#include "latticerect/lattice.hpp"
#include "latticerect/repr.hpp"

namespace latticerect {

/// Abstract rectangle graph on prod [0, n_i] with unit-step edges.
struct RectGraph {
    std::vector<long> dims;
    std::vector<std::vector<long>> vertices;          // lex order
    std::vector<std::pair<size_t, size_t>> edges;     // (from, to) with to = from + e_axis
    std::vector<int> edge_axis;
    size_t index_of(const std::vector<long>& coords) const;
};

RectGraph build_rect(const std::vector<long>& dims);

struct GraphVertex {
    std::vector<long> coords;
    Lattice lattice;  // representative chosen so comparable vertices nest
    Lattice display;  // scaled representative with primitive polynomial entries
};

struct GraphEdge {
    size_t from, to;  // to = from + e_axis
    int axis;
};

/// The lattice graph: vertex j carries E * diag(B / prod p_i^(j_i), 1) after
/// the exact stability filter re-derives the true box.
struct LatticeGraph {
    ReducibilityData red;
    std::vector<long> dims;
    std::vector<std::pair<PrimeElem, long>> primes;  // one per axis, exponent = dims entry
    std::vector<GraphVertex> vertices;               // lex order by coords
    std::vector<GraphEdge> edges;
    size_t base_index = 0;           // coords (0..0)
    bool candidate_shrunk = false;   // the filter trimmed the sampled box
    std::vector<long> candidate_dims;
    std::vector<long> box_offset;    // original candidate coordinates of the box minimum

    size_t index_of(const std::vector<long>& coords) const;
    /// Formula lattice at arbitrary integer coordinates in original candidate
    /// frame (used for out-of-box probes).
    Lattice formula_lattice(const std::vector<long>& candidate_coords) const;
};

/// Constructs the candidate diagonal family over the sampled box, filters by
/// exact stability, and requires the survivors to form a full sub-box.
/// Throws NotABox otherwise.
LatticeGraph build_lattice_graph(const Representation& rep, const ReducibilityData& red);

struct BfsResult {
    std::vector<Lattice> classes;  // discovery order
    std::vector<std::pair<size_t, size_t>> edges;
};

/// Breadth-first walk over homothety classes via residual stable lines
/// (d = 1 over F_p). Upward moves reuse the downward code path on the
/// pi^-1-rescaled lattice. Aborts with NonTermination when more than
/// max_classes classes appear.
BfsResult dvr_segment_bfs(const Representation& rep, const Lattice& start, long max_classes);

/// All homothety classes of stable sublattices of R^2 with det divisor
/// <= {pi : max_det_ord}, by exhausting column-echelon representatives
/// (d = 1 over F_p).
std::vector<Lattice> enumerate_stable_classes_dvr(const Representation& rep, long max_det_ord);

struct CheckResult {
    std::string id;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

/// Exact checks (a)-(g) of the structure theorem on a built graph.
VerificationReport verify_theorem_gal(const LatticeGraph& graph, const Representation& rep);

/// Representative with primitive polynomial entries (same homothety class).
Lattice tidy_lattice(const Lattice& L);

}  // namespace latticerect

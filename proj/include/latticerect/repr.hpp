#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latticerect/divisor.hpp"
#include "latticerect/matrix.hpp"

namespace latticerect {

struct ClosurePolicy {
    int word_bound = 4;  // max word length W
    int window = 2;      // stabilization window S
};

class Representation {
public:
    Representation(BaseField field, int nvars, std::vector<std::string> var_names,
                   std::vector<std::pair<std::string, Matrix2>> generators,
                   ClosurePolicy policy);

    const BaseField& field() const { return field_; }
    int nvars() const { return nvars_; }
    const std::vector<std::string>& var_names() const { return var_names_; }
    const std::vector<std::pair<std::string, Matrix2>>& generators() const { return generators_; }
    const ClosurePolicy& policy() const { return policy_; }

    /// Generators followed by their inverses, in input order; the word
    /// alphabet of the closure.
    const std::vector<std::pair<std::string, Matrix2>>& letters() const { return letters_; }

    Representation with_policy(ClosurePolicy p) const;

private:
    BaseField field_;
    int nvars_;
    std::vector<std::string> var_names_;
    std::vector<std::pair<std::string, Matrix2>> generators_;
    std::vector<std::pair<std::string, Matrix2>> letters_;
    ClosurePolicy policy_;
};

struct GroupElement {
    std::string word;  // "1" for the identity
    Matrix2 mat;
    int length;
};

struct Closure {
    std::vector<GroupElement> elements;  // BFS order: by length, then letter order
    bool stabilized;                     // some round below the bound added nothing
    int rounds;                          // word lengths actually explored
};

Closure close_monoid(const Representation& rep);

struct RegularElementData {
    std::string word;
    Matrix2 mat;
    LocalElem lambda_psi, lambda_psi_prime;
    Matrix2 eigenbasis;   // columns v_psi, v_psi_prime
    Matrix2 idem_psi, idem_psi_prime;
};

/// First closure element whose characteristic polynomial has exact roots in R
/// with distinct residues. psi labels the root (tr + s)/2 for the
/// sign-canonical square root s of the discriminant.
RegularElementData find_regular(const Representation& rep, const Closure& closure);

struct OffDiagSample {
    FieldElem b_gcd, c_gcd;          // divisorial gcds of the sampled b(g), c(g)
    bool stabilized;                 // unchanged over the final S word lengths
    std::vector<FieldElem> a_list, b_list, c_list, d_list;  // aligned with closure
};

OffDiagSample sample_offdiag(const Representation& rep, const Closure& closure,
                             const RegularElementData& regular);

struct HypothesesReport {
    bool trace_integral = false;
    std::string trace_witness;  // offending word when trace integrality fails
    bool red = false;
    std::string red_witness;
    bool g_dist = false;
    bool ir = false;
    bool all() const { return trace_integral && red && g_dist && ir; }
};

HypothesesReport check_hypotheses(const Representation& rep, const Closure& closure,
                                  const RegularElementData& regular, const OffDiagSample& sample);

struct ReducibilityData {
    RegularElementData regular;
    FieldElem B, C;  // canonical only up to a reciprocal unit shift; div(B*C) is the invariant
    LocalElem J;     // B*C
    Divisor j_divisor;
    std::vector<std::pair<PrimeElem, long>> primes;  // (p_i, n_i), deterministic order
    std::map<std::string, FieldElem> theta;          // word -> exact lift of a(g)
    std::map<std::string, FieldElem> theta_prime;    // word -> exact lift of d(g)
    bool stabilized = false;
};

/// Collects the eigenbasis off-diagonal gcds, factors the divisorial part of
/// J = B*C over the hint primes, and records the character lifts.
/// Throws NotIrreducible when B*C = 0.
ReducibilityData analyze_reducibility(const Representation& rep, const Closure& closure,
                                      const RegularElementData& regular,
                                      const std::vector<PrimeElem>& hints,
                                      const OffDiagSample* precomputed = nullptr);

}  // namespace latticerect

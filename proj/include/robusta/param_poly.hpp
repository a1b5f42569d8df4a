// ============================================================================
// param_poly.hpp — Convex rational polyhedra over clocks and the parameter Δ
// ============================================================================
//
// H-form: rows Σ cᵢ·xᵢ + c_Δ·Δ ≺ k with exact rationals, ≺ ∈ {<, ≤}.
// Projection and emptiness via Fourier–Motzkin elimination with syntactic
// redundancy pruning. Clock nonnegativity and Δ ≥ 0 are kept as explicit
// rows. Time elapse moves along (1,…,1,0): Δ never drifts.
//
// ============================================================================

#ifndef ROBUSTA_PARAM_POLY_HPP
#define ROBUSTA_PARAM_POLY_HPP

#include "robusta/federation.hpp"
#include "robusta/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace robusta {

// ── One inequality row ──────────────────────────────────────────────────────

struct ParamAtom {
    std::vector<Rational> coeffs;  // one per clock (clock i ↔ coeffs[i-1])
    Rational delta_coeff;
    bool strict = false;  // < vs ≤
    Rational constant;

    bool operator==(const ParamAtom&) const = default;
};

// ── Convex polyhedron ───────────────────────────────────────────────────────

class ParamPoly {
public:
    /// Nonnegative orthant with Δ ≥ 0, over `clocks` clocks.
    static ParamPoly orthant(int clocks);

    explicit ParamPoly(int clocks = 0);

    int clocks() const { return clocks_; }
    const std::vector<ParamAtom>& rows() const { return rows_; }

    void add_row(ParamAtom row);

    /// Conjoin a guard (parametric bounds and Δ-atoms allowed).
    ParamPoly and_guard(const Guard& g) const;

    ParamPoly intersect(const ParamPoly& o) const;

    bool is_empty() const;

    /// Timed successors / predecessors: clocks shift uniformly, Δ fixed.
    ParamPoly elapse() const;
    ParamPoly elapse_past() const;

    /// Preimage under resetting `clocks` to zero: substitute 0 for them,
    /// free their pre-values (≥ 0).
    ParamPoly unreset(const std::vector<ClockId>& reset) const;

    /// Image under resetting: eliminate the clocks, then pin them to zero.
    ParamPoly reset(const std::vector<ClockId>& reset) const;

    /// Pin the listed clocks to zero (conjoin equalities).
    ParamPoly with_clocks_zero() const;

    /// Membership of an exact point (valuation indexed 1..clocks, delta).
    bool contains(const std::vector<Rational>& valuation, const Rational& delta) const;

    /// Conjoin 0 ≤ Δ ≤ hi.
    ParamPoly clamp_delta(const Rational& hi) const;

    /// Convert to a difference-bound-shaped guard. Throws InternalError when
    /// a row is not of the form ±x ≺ l, x−y ≺ l or c_Δ·Δ ≺ k.
    Guard to_guard() const;

    /// Exact Δ-slice as a plain guard with rational constants.
    /// Returns nullopt when the slice is syntactically empty (a Δ-atom fails).
    std::optional<Guard> slice_at(const Rational& delta) const;

    std::string to_string() const;

private:
    void normalize();

    int clocks_ = 0;
    std::vector<ParamAtom> rows_;
};

// ── Finite unions ───────────────────────────────────────────────────────────

using PolySet = std::vector<ParamPoly>;

PolySet poly_union(const PolySet& a, const PolySet& b);
PolySet poly_intersect(const PolySet& a, const PolySet& b);

/// Convex difference a \ b as disjoint pieces.
PolySet poly_subtract_convex(const ParamPoly& a, const ParamPoly& b);
PolySet poly_subtract(const PolySet& a, const PolySet& b);
bool poly_includes(const PolySet& outer, const PolySet& inner);
bool poly_set_empty(const PolySet& s);
PolySet poly_prune(const PolySet& s);

// ── Parametric game operators ───────────────────────────────────────────────

/// PPred over one edge: guard ∧ preimage of target region under the reset,
/// with the (parametric) target invariant applied at the landing point.
PolySet ppred_edge(const PolySet& target, const Guard& guard,
                   const std::vector<ClockId>& resets, const Guard& target_invariant,
                   int clocks);

/// PPost over one edge.
PolySet ppost_edge(const PolySet& source, const Guard& guard,
                   const std::vector<ClockId>& resets, const Guard& target_invariant,
                   int clocks);

/// Safe timed predecessors with Δ held constant, delays restricted to the
/// (parametric) invariant of the location.
PolySet ppred_t(const PolySet& target, const PolySet& avoid, const Guard& invariant, int clocks);

// ── Δ projection ────────────────────────────────────────────────────────────

struct DeltaInterval {
    Rational lo;
    bool lo_strict = false;
    Rational hi;
    bool hi_strict = false;
    bool hi_unbounded = false;
};

/// Intersect with all clocks = 0, eliminate clocks, return Δ-intervals.
std::vector<DeltaInterval> project_delta(const PolySet& region);

struct MinimizeResult {
    Rational value;
    bool attained = false;
};

/// Infimum over the intervals. Throws InternalError on an empty set.
MinimizeResult minimize_delta(const std::vector<DeltaInterval>& intervals);

std::string polyset_to_string(const PolySet& s);

}  // namespace robusta

#endif  // ROBUSTA_PARAM_POLY_HPP

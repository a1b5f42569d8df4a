// ============================================================================
// transforms.hpp — Guard perturbation and game-automaton constructions
// ============================================================================
//
// Guard enlargement/restriction (k ± Δ), the Δ-perturbation of an
// implementation, enlarged-output specifications, the consistency and
// usefulness game automata, and the robust game automaton that wraps each
// verifier edge with a two-phase perturbation window guarded by a fresh
// clock.
//
// The consistency game observes the states from which the verifier cannot
// commit any output robustly: a commit at valuation v survives perturbation
// only if the guard (and the target invariant, for unreset clocks) still
// holds up to v + 2Δ, so upper bounds shrink by 2Δ in the commit window.
// The error region per location is the invariant minus the backward time
// closure of the commit windows; it is computed parametrically in Δ and
// materialized as input edges into a fresh bad location.
//
// ============================================================================

#ifndef ROBUSTA_TRANSFORMS_HPP
#define ROBUSTA_TRANSFORMS_HPP

#include "robusta/model.hpp"
#include "robusta/param_poly.hpp"

#include <set>
#include <string>
#include <vector>

namespace robusta {

// ── Delta ───────────────────────────────────────────────────────────────────

/// A concrete nonnegative rational perturbation or the symbolic parameter.
struct Delta {
    bool symbolic = false;
    Rational value;

    static Delta param() { return Delta{true, Rational(0)}; }
    static Delta of(Rational v);
    bool is_zero() const { return !symbolic && value == 0; }
};

// ── Guard rewrites ──────────────────────────────────────────────────────────

/// Upper-bound terms get k + Δ, lower-bound terms k − Δ.
Guard enlarge_guard(const Guard& g, const Delta& d);

/// Upper-bound terms get k − Δ, lower-bound terms k + Δ. May become
/// unsatisfiable, which is legal.
Guard restrict_guard(const Guard& g, const Delta& d);

// ── Model perturbations (Δ-perturbation of implementations) ─────────────────

struct PerturbOptions {
    /// Redirect unmatched inputs to the universal location (the definition),
    /// materializing it when absent.
    bool redirect_to_universal = true;
};

/// Output guards enlarged, input guards restricted, invariants enlarged, and
/// for every location/input a redirect covering the complement of the
/// restricted input guards. Redirects with empty guards are dropped, so the
/// 0-perturbation of an input-enabled model is the model itself.
Tioa perturb_implementation(const Tioa& impl, const Delta& d, const PerturbOptions& = {});

/// Enlarge output guards and invariants only; inputs untouched.
Tioa enlarge_spec_outputs(const Tioa& spec, const Delta& d);

// ── Game automata ───────────────────────────────────────────────────────────

struct GameAutomaton {
    Tioa automaton;
    std::set<LocationId> bad;
    Polarity verifier = Polarity::Output;
};

/// Reserved names used by the constructions; collision is a model error.
inline constexpr const char* kBadLocationName = "__bad";
inline constexpr const char* kErrActionName = "__err";
inline constexpr const char* kRobActionName = "__rob";
inline constexpr const char* kRobClockName = "__y";
inline constexpr const char* kUniversalLocationName = "__univ";

/// Parametric error region of one location: invariant minus states from
/// which some output edge can still be committed with a 2Δ margin.
/// At Δ = 0 this is the plain independent-progress error set.
PolySet err_region(const Tioa& spec, LocationId q);

/// Consistency game automaton: the specification plus a fresh bad location
/// and, per location with a non-empty error region, input edges guarded by
/// its convex components (parametric in Δ). Verifier: Output.
GameAutomaton build_consistency_game(const Tioa& spec);

/// Robust consistency game: the Def.-7 wrap of the specification with the
/// error observation attached afterwards, so err edges punish lingering at
/// the original locations but not commitments already in flight. Attaching
/// them first would re-impose the progress obligation during the
/// perturbation phases and double the margin.
GameAutomaton build_robust_consistency_game(const Tioa& spec);

/// Usefulness game automaton: bad = und-flagged locations, verifier = Input.
GameAutomaton build_usefulness_game(const Tioa& spec);

/// Robust game automaton: wraps every verifier edge e = (q, a, φ, λ, q')
/// into locations q^α_e, q^β_e with invariant y ≤ Δ, edges
/// (q,a,φ,{y},α), (α,a,y=Δ,{y},β), (α,rob,φ,λ,q'), (β,rob,φ,λ,q') and
/// rob-edges to bad for each convex component of ¬φ; spoiler edges are
/// replicated from α and β. rob belongs to the spoiler. With a symbolic
/// Delta the y-constraints are parametric.
GameAutomaton build_robust_game_automaton(const Tioa& a, const std::set<LocationId>& bad,
                                          const Delta& d, Polarity verifier);

/// Closed-form location/edge counts of the robust game automaton, derived
/// from the construction rules (for structural checks).
struct RobustCounts {
    int locations = 0;
    int edges = 0;
};
RobustCounts robust_game_counts(const Tioa& a, const std::set<LocationId>& bad, Polarity verifier);

/// Materialize universal-location semantics: self-loop edges for every
/// action with guard true (idempotent).
Tioa materialize_universal(const Tioa& a);

}  // namespace robusta

#endif  // ROBUSTA_TRANSFORMS_HPP

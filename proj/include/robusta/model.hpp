// ============================================================================
// model.hpp — Timed I/O automata: syntax types
// ============================================================================
//
// A Tioa holds locations with invariants, an input/output-partitioned action
// alphabet, and guarded edges with clock resets. Guard bounds are linear
// expressions a + b*Delta over one perturbation parameter, so the same type
// describes both plain automata (b = 0 everywhere) and parametric game
// automata. instantiate_delta() substitutes a concrete value for Delta.
//
// All types are immutable values after construction: no operation mutates a
// model in place, transformations return new automata.
//
// ============================================================================

#ifndef ROBUSTA_MODEL_HPP
#define ROBUSTA_MODEL_HPP

#include "robusta/rational.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace robusta {

// ── Identifiers ─────────────────────────────────────────────────────────────

/// Clock index. 0 is the implicit reference clock; declared clocks are 1..n.
using ClockId = int;
inline constexpr ClockId kRefClock = 0;

using LocationId = int;
using ActionId = int;
using EdgeId = int;

// ── Relations ───────────────────────────────────────────────────────────────

enum class Rel { Lt, Le, Gt, Ge };

inline bool is_upper(Rel r) { return r == Rel::Lt || r == Rel::Le; }
inline bool is_strict(Rel r) { return r == Rel::Lt || r == Rel::Gt; }
std::string rel_to_string(Rel r);

// ── Linear bound a + b·Δ ────────────────────────────────────────────────────

struct LinExpr {
    Rational base;         // a
    Rational delta_coeff;  // b

    LinExpr() = default;
    LinExpr(Rational a) : base(std::move(a)) {}
    LinExpr(Rational a, Rational b) : base(std::move(a)), delta_coeff(std::move(b)) {}

    bool is_constant() const { return delta_coeff == 0; }
    Rational at(const Rational& delta) const { return base + delta_coeff * delta; }

    bool operator==(const LinExpr&) const = default;
};

std::string linexpr_to_string(const LinExpr& e);

// ── Guard atoms ─────────────────────────────────────────────────────────────

/// left − right ≺ bound; right == kRefClock encodes the single-clock form.
struct AtomicConstraint {
    ClockId left = kRefClock;
    ClockId right = kRefClock;
    Rel rel = Rel::Le;
    LinExpr bound;

    bool is_single_clock() const { return right == kRefClock && left != kRefClock; }
    bool operator==(const AtomicConstraint&) const = default;
};

/// A constraint on Δ alone: Δ ≺ threshold (or Δ ≻ threshold).
/// Arises when robustness error sets change shape at a critical Δ.
struct DeltaAtom {
    Rel rel = Rel::Le;
    Rational threshold;

    bool holds_at(const Rational& delta) const;
    bool operator==(const DeltaAtom&) const = default;
};

/// Conjunction of atoms; empty = true.
struct Guard {
    std::vector<AtomicConstraint> atoms;
    std::vector<DeltaAtom> delta_atoms;

    bool is_true() const { return atoms.empty() && delta_atoms.empty(); }
    bool is_parametric() const;
    bool operator==(const Guard&) const = default;

    static Guard top() { return Guard{}; }
};

/// Direct evaluation of u ⊨ g at a concrete Δ. `valuation[i]` is the value of
/// clock i (index 0 unused, treated as 0).
bool guard_sat(const Guard& g, const std::vector<Rational>& valuation,
               const Rational& delta = Rational(0));

std::string guard_to_string(const Guard& g, const std::vector<std::string>& clock_names);

// ── Actions, locations, edges ───────────────────────────────────────────────

enum class Polarity { Input, Output };

inline Polarity opposite(Polarity p) {
    return p == Polarity::Input ? Polarity::Output : Polarity::Input;
}

struct Action {
    std::string name;
    Polarity polarity = Polarity::Input;
    bool operator==(const Action&) const = default;
};

struct LocationFlags {
    bool initial = false;
    bool universal = false;
    bool bad = false;
    bool und = false;  // undesirable: target set of usefulness games
    bool operator==(const LocationFlags&) const = default;
};

struct Location {
    std::string name;
    Guard invariant;  // conjunction of upper bounds on single clocks
    LocationFlags flags;
    bool operator==(const Location&) const = default;
};

struct Edge {
    LocationId source = -1;
    ActionId action = -1;
    Guard guard;
    std::vector<ClockId> resets;  // sorted, reference clock excluded
    LocationId target = -1;
    bool operator==(const Edge&) const = default;
};

// ── The automaton ───────────────────────────────────────────────────────────

struct Tioa {
    std::string name;
    std::vector<std::string> clock_names;  // clock i (1-based) has name clock_names[i-1]
    std::vector<Action> actions;
    std::vector<Location> locations;
    LocationId initial = -1;
    std::vector<Edge> edges;

    int clock_count() const { return static_cast<int>(clock_names.size()); }
    int dim() const { return clock_count() + 1; }

    std::optional<ActionId> find_action(const std::string& name) const;
    std::optional<LocationId> find_location(const std::string& name) const;
    std::optional<ClockId> find_clock(const std::string& name) const;

    bool is_parametric() const;

    /// Substitute a concrete value for Δ in every guard and invariant.
    /// Delta atoms become true (dropped) or render the guard unsatisfiable
    /// (encoded as a trivially false clock atom so edge indices are stable).
    Tioa instantiate_delta(const Rational& delta) const;

    /// Edge indices leaving a location.
    std::vector<EdgeId> edges_from(LocationId q) const;

    /// All rational constants appearing in guards and invariants (bounds
    /// evaluated as-is; used for scale-factor selection).
    std::vector<Rational> all_constants() const;
};

/// Structural equality that ignores the automaton name.
bool structurally_equal(const Tioa& a, const Tioa& b);

/// Stable text rendering of the full automaton (debug + determinism tests).
std::string tioa_to_string(const Tioa& a);

// ── Errors ──────────────────────────────────────────────────────────────────

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace robusta

#endif  // ROBUSTA_MODEL_HPP

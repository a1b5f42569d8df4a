// ============================================================================
// oracles.hpp — Test-only independent oracles
// ============================================================================
//
// Everything here evaluates the defining set comprehensions directly
// (exact rational interval logic or discretized enumeration) and never goes
// through the DBM/federation operator implementations it is used to check.
//
// ============================================================================

#ifndef ROBUSTA_TEST_ORACLES_HPP
#define ROBUSTA_TEST_ORACLES_HPP

#include "robusta/federation.hpp"
#include "robusta/game.hpp"
#include "robusta/model.hpp"

#include <optional>
#include <random>
#include <vector>

namespace robusta::test {

using Valuation = std::vector<Rational>;  // index 1..n used, [0] ignored

// ── Randomness ──────────────────────────────────────────────────────────────

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}

    int uniform(int lo, int hi);  // inclusive
    Rational rational(int max_value, int max_denominator);
};

/// Random canonical, possibly empty zone over `clocks` clocks with constants
/// bounded by `max_const`.
Dbm random_dbm(Rng& rng, int clocks, int max_const);

/// Random federation with 1..3 members (possibly empty).
Federation random_federation(Rng& rng, int clocks, int max_const);

/// Random valuation with denominators in {1,2,4,8}.
Valuation random_valuation(Rng& rng, int clocks, int max_value);

// ── Exact pointwise oracles ─────────────────────────────────────────────────

/// ∃d ≥ 0 : u − d ∈ Z and u − d ≥ 0   (definition of timed successors)
bool oracle_in_up(const Federation& z, const Valuation& u);

/// ∃d ≥ 0 : u + d ∈ Z                  (definition of timed predecessors)
bool oracle_in_down(const Federation& z, const Valuation& u);

/// u ∈ reset_λ(Z): u is 0 on λ and some Z-point agrees with u off λ.
bool oracle_in_reset(const Federation& z, const std::vector<ClockId>& resets, const Valuation& u);

/// u ∈ free_λ(Z): some Z-point agrees with u off λ.
bool oracle_in_free(const Federation& z, const std::vector<ClockId>& resets, const Valuation& u);

/// Definition of Pred_t: ∃d ≥ 0: u+d ∈ X and ∀d' ∈ [0,d]: u+d' ∉ Y.
bool oracle_in_pred_t(const Federation& x, const Federation& y, const Valuation& u);

/// Time-reversed: ∃w ∈ X, d ≥ 0: u = w+d and ∀d' ∈ [0,d]: w+d' ∉ avoid.
bool oracle_in_succ_t(const Federation& x, const Federation& avoid, const Valuation& u);

/// Discretized check of Pred_t on a 1/step grid of delays up to `horizon`.
bool discretized_pred_t(const Federation& x, const Federation& y, const Valuation& u,
                        const Rational& step, const Rational& horizon);

// ── Delay interval sets ─────────────────────────────────────────────────────

struct DelaySlice {
    Rational lo;
    bool lo_strict;
    Rational hi;        // ignored when unbounded
    bool hi_strict;
    bool unbounded;
};

/// All d ≥ 0 with u + d ∈ Z, as disjoint-ish slices (one per member).
std::vector<DelaySlice> delay_set(const Federation& z, const Valuation& u);

}  // namespace robusta::test

#endif  // ROBUSTA_TEST_ORACLES_HPP

// ============================================================================
// validate.hpp — Model validation, input completion, constant scaling
// ============================================================================

#ifndef ROBUSTA_VALIDATE_HPP
#define ROBUSTA_VALIDATE_HPP

#include "robusta/federation.hpp"
#include "robusta/model.hpp"

#include <string>
#include <vector>

namespace robusta {

// ── Validation ──────────────────────────────────────────────────────────────

struct DeterminismViolation {
    LocationId location = -1;
    ActionId action = -1;
    EdgeId first = -1;
    EdgeId second = -1;
};

struct InputGap {
    LocationId location = -1;
    ActionId action = -1;
    std::vector<Guard> gap;  // convex components of the uncovered region
};

struct ValidationReport {
    std::vector<DeterminismViolation> determinism;
    std::vector<InputGap> input_gaps;

    bool deterministic() const { return determinism.empty(); }
    bool input_enabled() const { return input_gaps.empty(); }
    std::string to_string(const Tioa& a) const;
};

/// Per location: same-action edge pairs with intersecting guard zones, and
/// per input the part of the invariant not covered by any edge guard.
ValidationReport validate_spec(const Tioa& a);

// ── Input completion ────────────────────────────────────────────────────────

enum class CompletionTarget { SelfLoop, Universal };

struct CompletionOptions {
    CompletionTarget target = CompletionTarget::SelfLoop;
};

/// Add an edge per input-enabledness gap (self-loop without resets, or a
/// redirect to the universal location). Idempotent.
Tioa complete_inputs(const Tioa& a, const CompletionOptions& = {});

// ── Scaling ─────────────────────────────────────────────────────────────────

struct ScaledModel {
    Tioa model;
    Rational factor;  // original value = scaled value / factor
};

/// Multiply every constant by `factor` (base parts only: for a parametric
/// model the parameter is rescaled with the model, so Δ-coefficients and
/// Δ-thresholds scale alongside).
Tioa scale_constants(const Tioa& a, const Rational& factor);

/// Smallest integer factor making every constant integral, also clearing the
/// denominators of the given extra values (probe deltas).
Rational choose_scale_factor(const Tioa& a, const std::vector<Rational>& extra = {});

/// Scale by choose_scale_factor.
ScaledModel scale_to_integers(const Tioa& a, const std::vector<Rational>& extra = {});

}  // namespace robusta

#endif  // ROBUSTA_VALIDATE_HPP

// ============================================================================
// refinement.hpp — Alternating timed simulation between specifications
// ============================================================================
//
// S ≤ T: every input T offers must be answerable by S, every output and
// delay of S must be allowed by T. Both sides action-step jointly (same
// alphabet), so the check explores the product zone graph and looks for
// locally violating valuations: an enabled S-output with no matching
// T-output, a T-input the S side cannot take, or an S-delay leaving T's
// invariant. The left side may be output-nondeterministic (perturbed
// implementations are); every branch is explored.
//
// ============================================================================

#ifndef ROBUSTA_REFINEMENT_HPP
#define ROBUSTA_REFINEMENT_HPP

#include "robusta/transforms.hpp"
#include "robusta/zone_graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace robusta {

struct CounterexampleStep {
    Rational delay;            // time elapsed before the move
    std::string action;        // empty on the final violating step
    Polarity polarity = Polarity::Input;
};

struct Counterexample {
    std::string kind;  // "output", "input", or "delay"
    std::string action;
    std::vector<CounterexampleStep> steps;  // concrete run prefix
    Rational final_delay;                   // delay exhibiting the violation
    std::string detail;
};

struct RefinementResult {
    bool holds = false;
    std::optional<Counterexample> counterexample;

    std::string to_string() const;
};

/// Decide S ≤ T. Requires identical alphabets, deterministic T, and
/// input-deterministic S; throws ModelError otherwise.
RefinementResult check_refinement(const Tioa& s, const Tioa& t,
                                  const ZoneGraphLimits& limits = {});

/// I ⊨_Δ S: perturb the implementation, then check refinement.
RefinementResult check_robust_satisfaction(const Tioa& impl, const Tioa& spec, const Delta& d,
                                           const ZoneGraphLimits& limits = {});

}  // namespace robusta

#endif  // ROBUSTA_REFINEMENT_HPP

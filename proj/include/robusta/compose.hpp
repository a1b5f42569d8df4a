// ============================================================================
// compose.hpp — Parallel composition of specifications
// ============================================================================

#ifndef ROBUSTA_COMPOSE_HPP
#define ROBUSTA_COMPOSE_HPP

#include "robusta/model.hpp"

namespace robusta {

/// Binary synchronization on shared action names: one side's output joins
/// the other's input (result: output); shared inputs stay inputs; shared
/// outputs are a composition error. Non-shared actions interleave. The full
/// location product is kept (|Loc| = |Loc(s)|·|Loc(t)|); bad and und flags
/// propagate from either component, universal only from both.
Tioa parallel_compose(const Tioa& s, const Tioa& t);

}  // namespace robusta

#endif  // ROBUSTA_COMPOSE_HPP

// ============================================================================
// replay.hpp — Parametric replay of a spoiling strategy
// ============================================================================
//
// Backward fixpoint over parametric symbolic states, restricted to the
// outcome of the spoiling strategy extracted from a lost fixed game:
// initialize the win sets at bad locations to their invariants, then pull
// back through spoiler edges (PPred) and safe timed predecessors, avoiding
// the verifier's escape moves. The Δ-projection of the initial state's win
// set is the set of perturbations for which the strategy still spoils; its
// infimum drives the refinement loop.
//
// ============================================================================

#ifndef ROBUSTA_REPLAY_HPP
#define ROBUSTA_REPLAY_HPP

#include "robusta/game.hpp"
#include "robusta/param_poly.hpp"

#include <set>

namespace robusta {

struct ReplayResult {
    Rational delta_min;
    bool attained = false;
    int states_touched = 0;
};

/// `param_game` is the parametric robust game automaton and `fixed` the
/// solved (lost) game of its instantiation `fixed_game` at `delta_bad`,
/// all in the same scaled units. Returns the infimum of the Δ values for
/// which the extracted strategy spoils, in those units.
/// Throws InternalError when the strategy spoils for no Δ.
ReplayResult replay_spoiling_strategy(const Tioa& param_game, const std::set<LocationId>& bad,
                                      const GameResult& fixed, const Tioa& fixed_game,
                                      const Rational& delta_bad);

}  // namespace robusta

#endif  // ROBUSTA_REPLAY_HPP

// ============================================================================
// game.hpp — Timed safety games on the zone graph
// ============================================================================
//
// The verifier keeps the play away from bad locations; the spoiler tries to
// reach them. The spoiler's forcing region is the least fixpoint of
//
//   Win[X] = Z ∩ Pred_t( ⋃ spoiler-pre(Win[Y]) ,  ⋃ verifier-pre(Z_Y \ Win[Y]) \ … )
//
// computed in synchronous rounds so that each point carries the round index
// at which it entered (its rank). Ranks strictly decrease along spoiler
// action moves, which makes extracted spoiling strategies terminating by
// construction. A state where neither time can pass nor the verifier must
// move counts for the verifier: safety is about what actually happens, and
// a stalled play visits no further states.
//
// ============================================================================

#ifndef ROBUSTA_GAME_HPP
#define ROBUSTA_GAME_HPP

#include "robusta/zone_graph.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace robusta {

// ── Strategies ──────────────────────────────────────────────────────────────

struct StrategyEntry {
    int state = -1;  // zone-graph state the entry belongs to
    LocationId location = -1;
    Federation zone;
    std::optional<EdgeId> edge;  // automaton edge to fire; nullopt = delay
    int rank = 0;                // fixpoint round that claimed the zone
};

struct Strategy {
    Polarity owner = Polarity::Input;
    std::vector<StrategyEntry> entries;

    std::vector<const StrategyEntry*> entries_at(int state) const;
};

// ── Results ─────────────────────────────────────────────────────────────────

struct RankedRegion {
    Federation zone;
    int rank = 0;
};

struct GameResult {
    bool verifier_wins = false;
    Polarity verifier = Polarity::Output;
    std::set<LocationId> bad;
    ZoneGraph graph;
    std::vector<Federation> spoiler_region;          // per graph state
    std::vector<std::vector<RankedRegion>> spoiler_slabs;
    std::map<LocationId, Federation> winning_region;  // verifier's, per location
    Strategy strategy;  // verifier strategy if won, spoiling strategy if lost
};

/// Solve the safety game for the given verifier. `bad` are spoiler targets;
/// locations flagged bad in the model are always included.
GameResult solve_safety_game(const Tioa& a, Polarity verifier,
                             const std::set<LocationId>& bad,
                             const ZoneGraphLimits& limits = {});

/// Rank-decreasing reachability strategy for the spoiler of a lost game.
/// Throws InternalError when called on a won game.
Strategy extract_spoiling_strategy(const GameResult& r, const Tioa& a);

// ── Outcome sub-graph ───────────────────────────────────────────────────────

struct OutcomeState {
    int graph_state = -1;
    Federation zone;  // restricted symbolic states actually visited
};

struct OutcomeEdge {
    int source = -1;       // outcome state index
    int graph_edge = -1;   // index into ZoneGraph::edges
    int target = -1;       // outcome state index
};

struct OutcomeGraph {
    std::vector<OutcomeState> states;
    std::vector<OutcomeEdge> edges;
    int initial = -1;
};

/// Runs of the symbolic graph compatible with a spoiler strategy: spoiler
/// moves where the strategy prescribes them, verifier moves only out of
/// delay-prescribed regions, futures restricted by the strategy.
OutcomeGraph outcome_runs(const ZoneGraph& graph, const Strategy& f, const Tioa& a);

// ── Shared helpers ──────────────────────────────────────────────────────────

/// Discrete predecessor through one automaton edge: points satisfying the
/// guard whose reset image lies in `target_set`.
Federation pred_edge(const Tioa& a, const Edge& e, const Federation& target_set);

/// Discrete successor through one edge (guard, reset; no future, no invariant).
Federation post_edge(const Tioa& a, const Edge& e, const Federation& source_set);

std::string strategy_to_string(const Strategy& f, const Tioa& a);

}  // namespace robusta

#endif  // ROBUSTA_GAME_HPP

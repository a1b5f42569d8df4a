// ============================================================================
// zone_graph.hpp — Forward symbolic reachability graph
// ============================================================================

#ifndef ROBUSTA_ZONE_GRAPH_HPP
#define ROBUSTA_ZONE_GRAPH_HPP

#include "robusta/federation.hpp"
#include "robusta/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace robusta {

struct SymbolicState {
    LocationId location = -1;
    Dbm zone = Dbm::empty(1);
};

struct ZoneGraphEdge {
    int source = -1;
    EdgeId edge = -1;
    int target = -1;
};

struct ZoneGraph {
    std::vector<SymbolicState> states;
    int initial = -1;
    std::vector<ZoneGraphEdge> edges;
    std::vector<std::vector<int>> out_edges;  // per state, indices into edges
    std::vector<std::vector<int>> in_edges;

    int size() const { return static_cast<int>(states.size()); }
};

struct ZoneGraphLimits {
    int max_states = 200000;
};

/// BFS zone-graph construction with per-clock maximal-constant extrapolation.
/// The automaton must have integer constants (already scaled, not parametric).
/// Throws ResourceLimitError when the state budget is exceeded.
ZoneGraph build_zone_graph(const Tioa& a, const ZoneGraphLimits& limits = {});

/// Per-clock maximal constants over all guards and invariants (index 1..n).
std::vector<std::int64_t> max_constants(const Tioa& a);

/// Stable text dump (states in BFS order, then edges).
std::string zone_graph_to_string(const ZoneGraph& g, const Tioa& a);

}  // namespace robusta

#endif  // ROBUSTA_ZONE_GRAPH_HPP

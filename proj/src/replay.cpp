#include "robusta/replay.hpp"

#include <deque>

namespace robusta {

ReplayResult replay_spoiling_strategy(const Tioa& param_game, const std::set<LocationId>& bad,
                                      const GameResult& fixed, const Tioa& fixed_game,
                                      const Rational& delta_bad) {
    if (fixed.verifier_wins)
        throw InternalError("replay requires a lost fixed game");
    const int clocks = param_game.clock_count();
    const ZoneGraph& g = fixed.graph;
    const Polarity spoiler = opposite(fixed.verifier);

    OutcomeGraph outcome = outcome_runs(g, fixed.strategy, fixed_game);

    // Predecessor relation restricted to the outcome sub-graph, on the
    // underlying zone-graph states.
    std::vector<std::set<int>> outcome_preds(static_cast<std::size_t>(g.size()));
    for (const auto& oe : outcome.edges) {
        int src = outcome.states[static_cast<std::size_t>(oe.source)].graph_state;
        int dst = outcome.states[static_cast<std::size_t>(oe.target)].graph_state;
        outcome_preds[static_cast<std::size_t>(dst)].insert(src);
    }

    auto inv_of = [&](int gstate) -> const Guard& {
        LocationId q = g.states[static_cast<std::size_t>(gstate)].location;
        return param_game.locations[static_cast<std::size_t>(q)].invariant;
    };
    auto inv_set = [&](int gstate) -> PolySet {
        ParamPoly p = ParamPoly::orthant(clocks).and_guard(inv_of(gstate)).clamp_delta(delta_bad);
        if (p.is_empty()) return {};
        return {p};
    };

    std::vector<PolySet> pwin(static_cast<std::size_t>(g.size()));
    std::deque<int> waiting;
    std::vector<bool> queued(static_cast<std::size_t>(g.size()), false);

    for (int i = 0; i < g.size(); ++i) {
        LocationId q = g.states[static_cast<std::size_t>(i)].location;
        if (bad.count(q)) {
            pwin[static_cast<std::size_t>(i)] = inv_set(i);
            for (int p : outcome_preds[static_cast<std::size_t>(i)])
                if (!queued[static_cast<std::size_t>(p)]) {
                    waiting.push_back(p);
                    queued[static_cast<std::size_t>(p)] = true;
                }
        }
    }

    ReplayResult out;
    const int max_pops = 50 * g.size() + 1000;
    int pops = 0;
    while (!waiting.empty()) {
        if (++pops > max_pops)
            throw InternalError("parametric replay did not stabilize");
        int x = waiting.front();
        waiting.pop_front();
        queued[static_cast<std::size_t>(x)] = false;
        LocationId q = g.states[static_cast<std::size_t>(x)].location;
        if (bad.count(q)) continue;
        ++out.states_touched;

        PolySet pbad, pgood;
        for (int geid : g.out_edges[static_cast<std::size_t>(x)]) {
            const auto& ge = g.edges[static_cast<std::size_t>(geid)];
            const Edge& e = param_game.edges[static_cast<std::size_t>(ge.edge)];
            Polarity pol = param_game.actions[static_cast<std::size_t>(e.action)].polarity;
            const Guard& tinv = inv_of(ge.target);
            if (pol == spoiler) {
                PolySet pre = ppred_edge(pwin[static_cast<std::size_t>(ge.target)], e.guard,
                                         e.resets, tinv, clocks);
                pbad = poly_union(pbad, pre);
            } else {
                PolySet escape = poly_subtract(inv_set(ge.target),
                                               pwin[static_cast<std::size_t>(ge.target)]);
                PolySet pre = ppred_edge(escape, e.guard, e.resets, tinv, clocks);
                pgood = poly_union(pgood, pre);
            }
        }
        PolySet reach = ppred_t(pbad, poly_subtract(pgood, pbad), inv_of(x), clocks);
        PolySet clamped;
        for (auto& p : reach) {
            ParamPoly c = p.clamp_delta(delta_bad);
            if (!c.is_empty()) clamped.push_back(c);
        }
        PolySet grown = poly_union(pwin[static_cast<std::size_t>(x)], clamped);
        if (!poly_includes(pwin[static_cast<std::size_t>(x)], grown)) {
            pwin[static_cast<std::size_t>(x)] = grown;
            for (int p : outcome_preds[static_cast<std::size_t>(x)])
                if (!queued[static_cast<std::size_t>(p)]) {
                    waiting.push_back(p);
                    queued[static_cast<std::size_t>(p)] = true;
                }
        }
    }

    auto intervals = project_delta(pwin[static_cast<std::size_t>(g.initial)]);
    if (intervals.empty())
        throw InternalError("spoiling strategy spoils for no perturbation value");
    MinimizeResult m = minimize_delta(intervals);
    out.delta_min = m.value;
    out.attained = m.attained;
    return out;
}

}  // namespace robusta

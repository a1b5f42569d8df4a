#include "robusta/game.hpp"

#include <algorithm>
#include <sstream>

namespace robusta {

std::vector<const StrategyEntry*> Strategy::entries_at(int state) const {
    std::vector<const StrategyEntry*> out;
    for (const auto& e : entries)
        if (e.state == state) out.push_back(&e);
    return out;
}

Federation pred_edge(const Tioa& a, const Edge& e, const Federation& target_set) {
    Federation s = target_set;
    for (ClockId c : e.resets) {
        Federation pinned(s.dim());
        for (const auto& m : s.members()) pinned.add(m.constrained(c, 0, Bound::le_zero()));
        s = pinned;
    }
    s = s.free(e.resets);
    s = s.and_guard(e.guard);
    (void)a;
    return s;
}

Federation post_edge(const Tioa& a, const Edge& e, const Federation& source_set) {
    (void)a;
    return source_set.and_guard(e.guard).reset(e.resets);
}

// ── Fixpoint ────────────────────────────────────────────────────────────────

namespace {

struct FixpointState {
    std::vector<Federation> win;
    std::vector<std::vector<RankedRegion>> slabs;
};

FixpointState spoiler_fixpoint(const Tioa& a, const ZoneGraph& g, Polarity verifier,
                               const std::set<LocationId>& bad) {
    const int n = g.size();
    FixpointState fs;
    fs.win.reserve(static_cast<std::size_t>(n));
    fs.slabs.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) {
        const auto& st = g.states[static_cast<std::size_t>(i)];
        if (bad.count(st.location)) {
            Federation all(st.zone);
            fs.win.push_back(all);
            fs.slabs[static_cast<std::size_t>(i)].push_back(RankedRegion{all, 0});
        } else {
            fs.win.push_back(Federation(st.zone.dim()));
        }
    }

    const int kMaxRounds = 4 * n + 16;
    for (int round = 1;; ++round) {
        if (round > kMaxRounds)
            throw InternalError("safety-game fixpoint did not stabilize");
        bool changed = false;
        std::vector<Federation> next = fs.win;
        for (int i = 0; i < n; ++i) {
            const auto& st = g.states[static_cast<std::size_t>(i)];
            if (bad.count(st.location)) continue;
            Federation target(st.zone.dim());
            Federation avoid(st.zone.dim());
            for (int geid : g.out_edges[static_cast<std::size_t>(i)]) {
                const auto& ge = g.edges[static_cast<std::size_t>(geid)];
                const Edge& e = a.edges[static_cast<std::size_t>(ge.edge)];
                Polarity pol = a.actions[static_cast<std::size_t>(e.action)].polarity;
                const auto& tz = g.states[static_cast<std::size_t>(ge.target)].zone;
                const auto& tw = fs.win[static_cast<std::size_t>(ge.target)];
                if (pol != verifier) {
                    target = target.unite(pred_edge(a, e, tw));
                } else {
                    avoid = avoid.unite(pred_edge(a, e, Federation(tz).subtract(tw)));
                }
            }
            Federation reach = pred_t(target, avoid.subtract(target));
            Federation nw = reach.intersect(Federation(st.zone));
            if (!fs.win[static_cast<std::size_t>(i)].includes(nw)) {
                Federation delta = nw.subtract(fs.win[static_cast<std::size_t>(i)]);
                fs.slabs[static_cast<std::size_t>(i)].push_back(RankedRegion{delta, round});
                next[static_cast<std::size_t>(i)] =
                    fs.win[static_cast<std::size_t>(i)].unite(nw).reduce();
                changed = true;
            }
        }
        fs.win = std::move(next);
        if (!changed) break;
    }
    return fs;
}

Strategy extract_verifier_strategy(const Tioa& a, const ZoneGraph& g, Polarity verifier,
                                   const std::vector<Federation>& spoiler_win) {
    Strategy f;
    f.owner = verifier;
    for (int i = 0; i < g.size(); ++i) {
        const auto& st = g.states[static_cast<std::size_t>(i)];
        Federation safe = Federation(st.zone).subtract(spoiler_win[static_cast<std::size_t>(i)]);
        if (safe.is_empty()) continue;
        Federation remaining = safe;
        for (int geid : g.out_edges[static_cast<std::size_t>(i)]) {
            if (remaining.is_empty()) break;
            const auto& ge = g.edges[static_cast<std::size_t>(geid)];
            const Edge& e = a.edges[static_cast<std::size_t>(ge.edge)];
            if (a.actions[static_cast<std::size_t>(e.action)].polarity != verifier) continue;
            const auto& tz = g.states[static_cast<std::size_t>(ge.target)].zone;
            Federation tsafe =
                Federation(tz).subtract(spoiler_win[static_cast<std::size_t>(ge.target)]);
            Federation part = remaining.intersect(pred_edge(a, e, tsafe));
            if (part.is_empty()) continue;
            f.entries.push_back(StrategyEntry{i, st.location, part, ge.edge, 0});
            remaining = remaining.subtract(part);
        }
        if (!remaining.is_empty())
            f.entries.push_back(StrategyEntry{i, st.location, remaining, std::nullopt, 0});
    }
    return f;
}

}  // namespace

GameResult solve_safety_game(const Tioa& a, Polarity verifier, const std::set<LocationId>& bad,
                             const ZoneGraphLimits& limits) {
    GameResult r;
    r.verifier = verifier;
    r.bad = bad;
    for (std::size_t i = 0; i < a.locations.size(); ++i)
        if (a.locations[i].flags.bad) r.bad.insert(static_cast<LocationId>(i));

    r.graph = build_zone_graph(a, limits);
    FixpointState fs = spoiler_fixpoint(a, r.graph, verifier, r.bad);
    r.spoiler_region = fs.win;
    r.spoiler_slabs = fs.slabs;

    for (int i = 0; i < r.graph.size(); ++i) {
        const auto& st = r.graph.states[static_cast<std::size_t>(i)];
        Federation safe =
            Federation(st.zone).subtract(r.spoiler_region[static_cast<std::size_t>(i)]);
        auto it = r.winning_region.find(st.location);
        if (it == r.winning_region.end())
            r.winning_region.emplace(st.location, safe);
        else
            it->second = it->second.unite(safe).reduce();
    }
    for (std::size_t q = 0; q < a.locations.size(); ++q)
        if (!r.winning_region.count(static_cast<LocationId>(q)))
            r.winning_region.emplace(static_cast<LocationId>(q), Federation(a.dim()));

    std::vector<Rational> zeros(static_cast<std::size_t>(a.dim()), Rational(0));
    r.verifier_wins =
        !r.spoiler_region[static_cast<std::size_t>(r.graph.initial)].contains(zeros);

    if (r.verifier_wins)
        r.strategy = extract_verifier_strategy(a, r.graph, verifier, r.spoiler_region);
    else
        r.strategy = extract_spoiling_strategy(r, a);
    return r;
}

Strategy extract_spoiling_strategy(const GameResult& r, const Tioa& a) {
    if (r.verifier_wins)
        throw InternalError("extract_spoiling_strategy called on a won game");
    Polarity spoiler = opposite(r.verifier);
    Strategy f;
    f.owner = spoiler;
    const ZoneGraph& g = r.graph;
    for (int i = 0; i < g.size(); ++i) {
        const auto& st = g.states[static_cast<std::size_t>(i)];
        if (r.bad.count(st.location)) continue;  // play is over at bad locations
        for (const auto& slab : r.spoiler_slabs[static_cast<std::size_t>(i)]) {
            Federation remaining = slab.zone;
            for (int geid : g.out_edges[static_cast<std::size_t>(i)]) {
                if (remaining.is_empty()) break;
                const auto& ge = g.edges[static_cast<std::size_t>(geid)];
                const Edge& e = a.edges[static_cast<std::size_t>(ge.edge)];
                if (a.actions[static_cast<std::size_t>(e.action)].polarity != spoiler) continue;
                // Union of strictly lower-ranked spoiler regions at the target.
                Federation lower(st.zone.dim());
                for (const auto& tslab : r.spoiler_slabs[static_cast<std::size_t>(ge.target)])
                    if (tslab.rank < slab.rank) lower = lower.unite(tslab.zone);
                Federation part = remaining.intersect(pred_edge(a, e, lower));
                if (part.is_empty()) continue;
                f.entries.push_back(StrategyEntry{i, st.location, part, ge.edge, slab.rank});
                remaining = remaining.subtract(part);
            }
            if (!remaining.is_empty())
                f.entries.push_back(
                    StrategyEntry{i, st.location, remaining, std::nullopt, slab.rank});
        }
    }
    return f;
}

// ── Outcome sub-graph ───────────────────────────────────────────────────────

namespace {

/// Future of `from` restricted by the strategy entries at one graph state:
/// a point is reachable if the whole delay stays inside regions prescribing
/// delay or the same action as the endpoint's region.
Federation restricted_future(const Federation& from, const ZoneGraph& g, int state,
                             const Strategy& f, const Tioa& a) {
    const auto& st = g.states[static_cast<std::size_t>(state)];
    Federation zone(st.zone);
    auto entries = f.entries_at(state);

    std::map<ActionId, Federation> action_zones;
    for (const auto* e : entries) {
        if (!e->edge) continue;
        ActionId act = a.edges[static_cast<std::size_t>(*e->edge)].action;
        auto it = action_zones.find(act);
        if (it == action_zones.end())
            action_zones.emplace(act, e->zone);
        else
            it->second = it->second.unite(e->zone);
    }
    Federation all_actions(st.zone.dim());
    for (auto& [act, z] : action_zones) all_actions = all_actions.unite(z);
    // Delay region: everywhere the strategy does not prescribe an action
    // (explicit delay entries and unmapped points alike).
    Federation delay = zone.subtract(all_actions);

    Federation result = succ_t(from, Federation::universe(st.zone.dim()).subtract(delay));
    for (auto& [act, z] : action_zones) {
        Federation allowed = delay.unite(z);
        Federation via =
            succ_t(from, Federation::universe(st.zone.dim()).subtract(allowed)).intersect(z);
        result = result.unite(via);
    }
    return result.intersect(zone).reduce();
}

std::string federation_key(const Federation& f) {
    std::vector<std::string> keys;
    for (const auto& m : f.members()) keys.push_back(m.key());
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (auto& k : keys) {
        out += k;
        out += "|";
    }
    return out;
}

}  // namespace

OutcomeGraph outcome_runs(const ZoneGraph& graph, const Strategy& f, const Tioa& a) {
    OutcomeGraph og;
    std::map<std::pair<int, std::string>, int> seen;
    const int dim = a.dim();

    auto intern = [&](int gstate, const Federation& zone) -> int {
        auto key = std::make_pair(gstate, federation_key(zone));
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        if (og.states.size() > 20000)
            throw ResourceLimitError("outcome sub-graph exceeds state limit");
        int id = static_cast<int>(og.states.size());
        og.states.push_back(OutcomeState{gstate, zone});
        seen.emplace(key, id);
        return id;
    };

    // Initial restricted state: from the zero valuation.
    Federation zero(Dbm::zero(dim));
    Federation start = restricted_future(
        zero.intersect(Federation(graph.states[static_cast<std::size_t>(graph.initial)].zone)),
        graph, graph.initial, f, a);
    if (start.is_empty()) return og;
    og.initial = intern(graph.initial, start);

    std::vector<int> work{og.initial};
    while (!work.empty()) {
        int oid = work.back();
        work.pop_back();
        int gstate = og.states[static_cast<std::size_t>(oid)].graph_state;
        Federation zone = og.states[static_cast<std::size_t>(oid)].zone;

        auto entries = f.entries_at(gstate);
        Federation delay_zone(dim);
        for (const auto* e : entries)
            if (!e->edge) delay_zone = delay_zone.unite(e->zone);

        for (int geid : graph.out_edges[static_cast<std::size_t>(gstate)]) {
            const auto& ge = graph.edges[static_cast<std::size_t>(geid)];
            const Edge& e = a.edges[static_cast<std::size_t>(ge.edge)];
            Polarity pol = a.actions[static_cast<std::size_t>(e.action)].polarity;

            Federation base(dim);
            if (pol == f.owner) {
                // Spoiler move: only where the strategy prescribes this action.
                for (const auto* en : entries) {
                    if (!en->edge) continue;
                    if (a.edges[static_cast<std::size_t>(*en->edge)].action != e.action) continue;
                    base = base.unite(zone.intersect(en->zone));
                }
            } else {
                // Opponent move: only out of delay-prescribed regions.
                base = zone.intersect(delay_zone);
            }
            if (base.is_empty()) continue;

            Federation stepped = post_edge(a, e, base);
            const auto& tstate = graph.states[static_cast<std::size_t>(ge.target)];
            stepped = stepped.intersect(Federation(tstate.zone));
            if (stepped.is_empty()) continue;
            Federation restricted = restricted_future(stepped, graph, ge.target, f, a);
            if (restricted.is_empty()) continue;

            bool fresh = seen.find({ge.target, federation_key(restricted)}) == seen.end();
            int tid = intern(ge.target, restricted);
            og.edges.push_back(OutcomeEdge{oid, geid, tid});
            if (fresh) work.push_back(tid);
        }
    }
    return og;
}

std::string strategy_to_string(const Strategy& f, const Tioa& a) {
    std::ostringstream oss;
    oss << (f.owner == Polarity::Input ? "input" : "output") << " strategy, "
        << f.entries.size() << " entries\n";
    for (const auto& e : f.entries) {
        oss << "  S" << e.state << " " << a.locations[static_cast<std::size_t>(e.location)].name
            << " [" << e.zone.to_string(a.clock_names) << "] -> ";
        if (e.edge) {
            const Edge& ae = a.edges[static_cast<std::size_t>(*e.edge)];
            oss << a.actions[static_cast<std::size_t>(ae.action)].name;
        } else {
            oss << "delay";
        }
        oss << " (rank " << e.rank << ")\n";
    }
    return oss.str();
}

}  // namespace robusta

#include "robusta/zone_graph.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace robusta {

std::vector<std::int64_t> max_constants(const Tioa& a) {
    std::vector<std::int64_t> mc(static_cast<std::size_t>(a.dim()), 0);
    auto feed = [&](const Guard& g) {
        for (const auto& atom : g.atoms) {
            if (!atom.bound.is_constant())
                throw InternalError("max_constants on a parametric automaton");
            std::int64_t k = to_int64(atom.bound.base);
            std::int64_t v = k < 0 ? -k : k;
            if (atom.left != kRefClock && v > mc[static_cast<std::size_t>(atom.left)])
                mc[static_cast<std::size_t>(atom.left)] = v;
            if (atom.right != kRefClock && v > mc[static_cast<std::size_t>(atom.right)])
                mc[static_cast<std::size_t>(atom.right)] = v;
        }
    };
    for (const auto& l : a.locations) feed(l.invariant);
    for (const auto& e : a.edges) feed(e.guard);
    return mc;
}

ZoneGraph build_zone_graph(const Tioa& a, const ZoneGraphLimits& limits) {
    if (a.initial < 0) throw ModelError("automaton has no initial location");
    const int dim = a.dim();
    const auto mc = max_constants(a);

    ZoneGraph g;
    std::map<std::pair<LocationId, std::string>, int> seen;

    auto intern = [&](LocationId q, const Dbm& z) -> int {
        auto key = std::make_pair(q, z.key());
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        if (g.size() >= limits.max_states)
            throw ResourceLimitError("zone graph exceeds state limit (" +
                                     std::to_string(limits.max_states) + " states reached)");
        int id = g.size();
        g.states.push_back(SymbolicState{q, z});
        g.out_edges.emplace_back();
        g.in_edges.emplace_back();
        seen.emplace(key, id);
        return id;
    };

    const Guard& inv0 = a.locations[static_cast<std::size_t>(a.initial)].invariant;
    Dbm z0 = Dbm::zero(dim).up().and_guard(inv0).extrapolate(mc);
    if (z0.is_empty()) throw ModelError("initial state violates its invariant");
    g.initial = intern(a.initial, z0);

    std::deque<int> work;
    work.push_back(g.initial);
    std::size_t processed = 0;
    while (!work.empty()) {
        int id = work.front();
        work.pop_front();
        ++processed;
        LocationId q = g.states[static_cast<std::size_t>(id)].location;
        Dbm z = g.states[static_cast<std::size_t>(id)].zone;
        for (EdgeId eid : a.edges_from(q)) {
            const Edge& e = a.edges[static_cast<std::size_t>(eid)];
            const Guard& inv_t = a.locations[static_cast<std::size_t>(e.target)].invariant;
            Dbm succ = z.and_guard(e.guard).reset(e.resets).up().and_guard(inv_t).extrapolate(mc);
            if (succ.is_empty()) continue;
            bool fresh = seen.find({e.target, succ.key()}) == seen.end();
            int tid = intern(e.target, succ);
            int geid = static_cast<int>(g.edges.size());
            g.edges.push_back(ZoneGraphEdge{id, eid, tid});
            g.out_edges[static_cast<std::size_t>(id)].push_back(geid);
            g.in_edges[static_cast<std::size_t>(tid)].push_back(geid);
            if (fresh) work.push_back(tid);
        }
    }
    (void)processed;
    return g;
}

std::string zone_graph_to_string(const ZoneGraph& g, const Tioa& a) {
    std::ostringstream oss;
    oss << "zone graph of " << a.name << ": " << g.size() << " states, " << g.edges.size()
        << " transitions\n";
    for (int i = 0; i < g.size(); ++i) {
        const auto& s = g.states[static_cast<std::size_t>(i)];
        oss << "  S" << i << (i == g.initial ? "*" : " ") << " "
            << a.locations[static_cast<std::size_t>(s.location)].name << " : "
            << s.zone.to_string(a.clock_names) << "\n";
    }
    for (const auto& e : g.edges) {
        const Edge& ae = a.edges[static_cast<std::size_t>(e.edge)];
        const Action& act = a.actions[static_cast<std::size_t>(ae.action)];
        oss << "  S" << e.source << " -" << act.name
            << (act.polarity == Polarity::Input ? "?" : "!") << "-> S" << e.target << "\n";
    }
    return oss.str();
}

}  // namespace robusta

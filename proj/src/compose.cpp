#include "robusta/compose.hpp"

#include <algorithm>
#include <map>

namespace robusta {

Tioa parallel_compose(const Tioa& s, const Tioa& t) {
    Tioa out;
    out.name = s.name + "|" + t.name;

    // Clock spaces are disjoint; rename on collision.
    std::vector<ClockId> s_clock(static_cast<std::size_t>(s.clock_count()) + 1, 0);
    std::vector<ClockId> t_clock(static_cast<std::size_t>(t.clock_count()) + 1, 0);
    for (int c = 1; c <= s.clock_count(); ++c) {
        out.clock_names.push_back(s.clock_names[static_cast<std::size_t>(c) - 1]);
        s_clock[static_cast<std::size_t>(c)] = static_cast<ClockId>(out.clock_names.size());
    }
    for (int c = 1; c <= t.clock_count(); ++c) {
        std::string n = t.clock_names[static_cast<std::size_t>(c) - 1];
        if (out.clock_names.end() != std::find(out.clock_names.begin(), out.clock_names.end(), n))
            n = t.name + "." + n;
        out.clock_names.push_back(n);
        t_clock[static_cast<std::size_t>(c)] = static_cast<ClockId>(out.clock_names.size());
    }

    // Action alphabet: union; a shared name synchronizes.
    std::map<std::string, Polarity> polarity;
    for (const auto& a : s.actions) polarity[a.name] = a.polarity;
    for (const auto& a : t.actions) {
        auto it = polarity.find(a.name);
        if (it == polarity.end()) {
            polarity[a.name] = a.polarity;
        } else if (it->second == Polarity::Output && a.polarity == Polarity::Output) {
            throw ModelError("composition error: both components output '" + a.name + "'");
        } else if (it->second == Polarity::Output || a.polarity == Polarity::Output) {
            it->second = Polarity::Output;  // input/output handshake emits an output
        }
    }
    for (const auto& a : s.actions) out.actions.push_back(Action{a.name, polarity[a.name]});
    for (const auto& a : t.actions)
        if (!s.find_action(a.name)) out.actions.push_back(Action{a.name, polarity[a.name]});

    auto remap_guard = [](const Guard& g, const std::vector<ClockId>& map) {
        Guard o = g;
        for (auto& atom : o.atoms) {
            if (atom.left != kRefClock) atom.left = map[static_cast<std::size_t>(atom.left)];
            if (atom.right != kRefClock) atom.right = map[static_cast<std::size_t>(atom.right)];
        }
        return o;
    };
    auto remap_resets = [](const std::vector<ClockId>& resets, const std::vector<ClockId>& map) {
        std::vector<ClockId> o;
        for (ClockId c : resets) o.push_back(map[static_cast<std::size_t>(c)]);
        std::sort(o.begin(), o.end());
        return o;
    };

    // Full location product, row-major over (s, t).
    auto pair_id = [&](LocationId qs, LocationId qt) {
        return qs * static_cast<LocationId>(t.locations.size()) + qt;
    };
    for (const auto& ls : s.locations)
        for (const auto& lt : t.locations) {
            Location l;
            l.name = ls.name + "." + lt.name;
            l.invariant = remap_guard(ls.invariant, s_clock);
            Guard ti = remap_guard(lt.invariant, t_clock);
            for (auto& atom : ti.atoms) l.invariant.atoms.push_back(atom);
            for (auto& da : ti.delta_atoms) l.invariant.delta_atoms.push_back(da);
            l.flags.bad = ls.flags.bad || lt.flags.bad;
            l.flags.und = ls.flags.und || lt.flags.und;
            l.flags.universal = ls.flags.universal && lt.flags.universal;
            out.locations.push_back(l);
        }
    out.initial = pair_id(s.initial, t.initial);
    out.locations[static_cast<std::size_t>(out.initial)].flags.initial = true;

    bool shared_initial_flagged = false;
    for (std::size_t i = 0; i < out.locations.size(); ++i) {
        if (static_cast<LocationId>(i) != out.initial) out.locations[i].flags.initial = false;
        else shared_initial_flagged = true;
    }
    (void)shared_initial_flagged;

    auto is_shared = [&](const std::string& name) {
        return s.find_action(name).has_value() && t.find_action(name).has_value();
    };

    for (LocationId qs = 0; qs < static_cast<LocationId>(s.locations.size()); ++qs)
        for (LocationId qt = 0; qt < static_cast<LocationId>(t.locations.size()); ++qt) {
            // s moves alone
            for (EdgeId eid : s.edges_from(qs)) {
                const Edge& e = s.edges[static_cast<std::size_t>(eid)];
                const std::string& an = s.actions[static_cast<std::size_t>(e.action)].name;
                if (is_shared(an)) continue;
                out.edges.push_back(Edge{pair_id(qs, qt), *out.find_action(an),
                                         remap_guard(e.guard, s_clock),
                                         remap_resets(e.resets, s_clock), pair_id(e.target, qt)});
            }
            // t moves alone
            for (EdgeId eid : t.edges_from(qt)) {
                const Edge& e = t.edges[static_cast<std::size_t>(eid)];
                const std::string& an = t.actions[static_cast<std::size_t>(e.action)].name;
                if (is_shared(an)) continue;
                out.edges.push_back(Edge{pair_id(qs, qt), *out.find_action(an),
                                         remap_guard(e.guard, t_clock),
                                         remap_resets(e.resets, t_clock), pair_id(qs, e.target)});
            }
            // synchronized moves
            for (EdgeId sid : s.edges_from(qs)) {
                const Edge& es = s.edges[static_cast<std::size_t>(sid)];
                const std::string& an = s.actions[static_cast<std::size_t>(es.action)].name;
                if (!is_shared(an)) continue;
                for (EdgeId tid : t.edges_from(qt)) {
                    const Edge& et = t.edges[static_cast<std::size_t>(tid)];
                    if (t.actions[static_cast<std::size_t>(et.action)].name != an) continue;
                    Guard g = remap_guard(es.guard, s_clock);
                    Guard gt = remap_guard(et.guard, t_clock);
                    for (auto& atom : gt.atoms) g.atoms.push_back(atom);
                    for (auto& da : gt.delta_atoms) g.delta_atoms.push_back(da);
                    std::vector<ClockId> resets = remap_resets(es.resets, s_clock);
                    for (ClockId c : remap_resets(et.resets, t_clock)) resets.push_back(c);
                    std::sort(resets.begin(), resets.end());
                    out.edges.push_back(Edge{pair_id(qs, qt), *out.find_action(an), std::move(g),
                                             std::move(resets), pair_id(es.target, et.target)});
                }
            }
        }
    return out;
}

}  // namespace robusta

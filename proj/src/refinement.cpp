#include "robusta/refinement.hpp"

#include "robusta/validate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace robusta {

std::string RefinementResult::to_string() const {
    if (holds) return "refinement holds\n";
    std::ostringstream oss;
    oss << "refinement fails: " << counterexample->kind;
    if (!counterexample->action.empty()) oss << " on '" << counterexample->action << "'";
    oss << "\n";
    for (const auto& step : counterexample->steps) {
        oss << "  delay " << rational_to_string(step.delay);
        if (!step.action.empty())
            oss << ", " << step.action << (step.polarity == Polarity::Input ? "?" : "!");
        oss << "\n";
    }
    oss << "  delay " << rational_to_string(counterexample->final_delay) << ", then "
        << counterexample->detail << "\n";
    return oss.str();
}

namespace {

struct Side {
    Tioa model;                     // scaled, universal materialized
    std::vector<ClockId> clock_map;  // original clock -> joint clock
};

Guard remap_guard(const Guard& g, const std::vector<ClockId>& map) {
    Guard o = g;
    for (auto& atom : o.atoms) {
        if (atom.left != kRefClock) atom.left = map[static_cast<std::size_t>(atom.left)];
        if (atom.right != kRefClock) atom.right = map[static_cast<std::size_t>(atom.right)];
    }
    return o;
}

std::vector<ClockId> remap_resets(const std::vector<ClockId>& r, const std::vector<ClockId>& map) {
    std::vector<ClockId> o;
    for (ClockId c : r) o.push_back(map[static_cast<std::size_t>(c)]);
    std::sort(o.begin(), o.end());
    return o;
}

/// Points from which the edge can fire: guard ∧ target invariant after reset.
Federation enabled_region(const Guard& guard, const std::vector<ClockId>& resets,
                          const Guard& target_inv, int dim) {
    Federation s(guard_to_dbm(target_inv, dim));
    for (ClockId c : resets) {
        Federation pinned(dim);
        for (const auto& m : s.members()) pinned.add(m.constrained(c, 0, Bound::le_zero()));
        s = pinned;
    }
    return s.free(resets).and_guard(guard);
}

struct JointEdge {
    ActionId action = -1;           // joint action index (shared alphabet order of s)
    Polarity polarity = Polarity::Input;
    Guard guard;                    // conjoined, remapped
    std::vector<ClockId> resets;    // remapped union
    LocationId s_target = -1;
    LocationId t_target = -1;
    Guard target_inv;               // conjoined target invariants
};

struct ProductState {
    LocationId s_loc;
    LocationId t_loc;
    Dbm zone = Dbm::empty(1);
};

}  // namespace

RefinementResult check_refinement(const Tioa& s_in, const Tioa& t_in,
                                  const ZoneGraphLimits& limits) {
    // identical alphabets
    if (s_in.actions.size() != t_in.actions.size())
        throw ModelError("refinement requires identical alphabets");
    for (const auto& a : s_in.actions) {
        auto other = t_in.find_action(a.name);
        if (!other || t_in.actions[static_cast<std::size_t>(*other)].polarity != a.polarity)
            throw ModelError("refinement requires identical alphabets (mismatch on '" + a.name +
                             "')");
    }

    // joint scaling, universal semantics materialized
    std::vector<Rational> consts = s_in.all_constants();
    for (const auto& c : t_in.all_constants()) consts.push_back(c);
    Rational factor(lcm_denominators(consts));
    Tioa s = materialize_universal(scale_constants(s_in, factor));
    Tioa t = materialize_universal(scale_constants(t_in, factor));

    // determinism requirements: T fully, S on inputs
    for (const auto& v : validate_spec(t).determinism)
        throw ModelError("refinement target is nondeterministic on '" +
                         t.actions[static_cast<std::size_t>(v.action)].name + "'");
    for (const auto& v : validate_spec(s).determinism)
        if (s.actions[static_cast<std::size_t>(v.action)].polarity == Polarity::Input)
            throw ModelError("refinement source has nondeterministic input '" +
                             s.actions[static_cast<std::size_t>(v.action)].name + "'");

    const int sn = s.clock_count();
    const int tn = t.clock_count();
    const int dim = sn + tn + 1;
    std::vector<ClockId> smap(static_cast<std::size_t>(sn) + 1, 0);
    std::vector<ClockId> tmap(static_cast<std::size_t>(tn) + 1, 0);
    for (int c = 1; c <= sn; ++c) smap[static_cast<std::size_t>(c)] = c;
    for (int c = 1; c <= tn; ++c) tmap[static_cast<std::size_t>(c)] = sn + c;

    auto s_inv = [&](LocationId q) {
        return remap_guard(s.locations[static_cast<std::size_t>(q)].invariant, smap);
    };
    auto t_inv = [&](LocationId q) {
        return remap_guard(t.locations[static_cast<std::size_t>(q)].invariant, tmap);
    };

    // extrapolation constants over the joint clock space
    std::vector<std::int64_t> mc(static_cast<std::size_t>(dim), 0);
    auto feed = [&](const Guard& g) {
        for (const auto& a : g.atoms) {
            std::int64_t k = to_int64(a.bound.base);
            std::int64_t v = k < 0 ? -k : k;
            if (a.left != kRefClock)
                mc[static_cast<std::size_t>(a.left)] = std::max(mc[static_cast<std::size_t>(a.left)], v);
            if (a.right != kRefClock)
                mc[static_cast<std::size_t>(a.right)] =
                    std::max(mc[static_cast<std::size_t>(a.right)], v);
        }
    };
    for (const auto& l : s.locations) feed(remap_guard(l.invariant, smap));
    for (const auto& e : s.edges) feed(remap_guard(e.guard, smap));
    for (const auto& l : t.locations) feed(remap_guard(l.invariant, tmap));
    for (const auto& e : t.edges) feed(remap_guard(e.guard, tmap));

    // product exploration
    std::vector<ProductState> states;
    std::vector<int> parent_state;
    std::vector<int> parent_edge;  // index into joint_edges_of parent
    std::vector<std::vector<JointEdge>> joint_edges;
    std::map<std::pair<std::pair<LocationId, LocationId>, std::string>, int> seen;

    auto intern = [&](LocationId sq, LocationId tq, const Dbm& z, int from, int via) -> int {
        auto key = std::make_pair(std::make_pair(sq, tq), z.key());
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        if (static_cast<int>(states.size()) >= limits.max_states)
            throw ResourceLimitError("refinement product exceeds state limit");
        states.push_back(ProductState{sq, tq, z});
        parent_state.push_back(from);
        parent_edge.push_back(via);
        joint_edges.emplace_back();
        seen.emplace(key, static_cast<int>(states.size()) - 1);
        return static_cast<int>(states.size()) - 1;
    };

    Dbm z0 = Dbm::zero(dim).up().and_guard(s_inv(s.initial)).and_guard(t_inv(t.initial));
    z0 = z0.extrapolate(mc);
    if (z0.is_empty()) throw ModelError("initial product state violates an invariant");
    intern(s.initial, t.initial, z0, -1, -1);

    struct Violation {
        int state;
        std::string kind;
        ActionId action;  // on s's alphabet; -1 for delay
        Federation witness;
    };
    std::optional<Violation> violation;

    std::deque<int> work{0};
    while (!work.empty() && !violation) {
        int id = work.front();
        work.pop_front();
        ProductState st = states[static_cast<std::size_t>(id)];
        Federation zone(st.zone);

        // delay violation: an S-legal future point outside T's invariant
        {
            Guard ti = t_inv(st.t_loc);
            if (!ti.is_true()) {
                Federation outside(dim);
                for (const auto& piece : complement_guard(ti))
                    outside.add(guard_to_dbm(piece, dim));
                Federation bad_future =
                    zone.up().and_guard(s_inv(st.s_loc)).intersect(outside);
                if (!bad_future.is_empty()) {
                    Federation witness = zone.intersect(bad_future.down());
                    violation = Violation{id, "delay", -1, witness};
                    break;
                }
            }
        }

        for (std::size_t act = 0; act < s.actions.size() && !violation; ++act) {
            Polarity pol = s.actions[act].polarity;
            ActionId t_act = *t.find_action(s.actions[act].name);

            std::vector<EdgeId> s_edges, t_edges;
            for (EdgeId eid : s.edges_from(st.s_loc))
                if (s.edges[static_cast<std::size_t>(eid)].action == static_cast<ActionId>(act))
                    s_edges.push_back(eid);
            for (EdgeId eid : t.edges_from(st.t_loc))
                if (t.edges[static_cast<std::size_t>(eid)].action == t_act)
                    t_edges.push_back(eid);

            auto s_enabled = [&](EdgeId eid) {
                const Edge& e = s.edges[static_cast<std::size_t>(eid)];
                return enabled_region(remap_guard(e.guard, smap), remap_resets(e.resets, smap),
                                      s_inv(e.target), dim);
            };
            auto t_enabled = [&](EdgeId eid) {
                const Edge& e = t.edges[static_cast<std::size_t>(eid)];
                return enabled_region(remap_guard(e.guard, tmap), remap_resets(e.resets, tmap),
                                      t_inv(e.target), dim);
            };

            if (pol == Polarity::Output) {
                // every enabled S-output must have a T-match
                Federation t_cover(dim);
                for (EdgeId te : t_edges) t_cover = t_cover.unite(t_enabled(te));
                for (EdgeId se : s_edges) {
                    Federation bad = zone.intersect(s_enabled(se)).subtract(t_cover);
                    if (!bad.is_empty()) {
                        violation = Violation{id, "output", static_cast<ActionId>(act), bad};
                        break;
                    }
                }
            } else {
                // every T-enabled input must have an S-match
                Federation s_cover(dim);
                for (EdgeId se : s_edges) s_cover = s_cover.unite(s_enabled(se));
                for (EdgeId te : t_edges) {
                    Federation bad = zone.intersect(t_enabled(te)).subtract(s_cover);
                    if (!bad.is_empty()) {
                        violation = Violation{id, "input", static_cast<ActionId>(act), bad};
                        break;
                    }
                }
            }
            if (violation) break;

            // joint successors
            for (EdgeId se : s_edges)
                for (EdgeId te : t_edges) {
                    const Edge& es = s.edges[static_cast<std::size_t>(se)];
                    const Edge& et = t.edges[static_cast<std::size_t>(te)];
                    JointEdge je;
                    je.action = static_cast<ActionId>(act);
                    je.polarity = pol;
                    je.guard = remap_guard(es.guard, smap);
                    for (auto& a : remap_guard(et.guard, tmap).atoms) je.guard.atoms.push_back(a);
                    je.resets = remap_resets(es.resets, smap);
                    for (ClockId c : remap_resets(et.resets, tmap)) je.resets.push_back(c);
                    std::sort(je.resets.begin(), je.resets.end());
                    je.s_target = es.target;
                    je.t_target = et.target;
                    je.target_inv = s_inv(es.target);
                    for (auto& a : t_inv(et.target).atoms) je.target_inv.atoms.push_back(a);

                    Dbm succ = st.zone.and_guard(je.guard)
                                   .reset(je.resets)
                                   .up()
                                   .and_guard(je.target_inv)
                                   .extrapolate(mc);
                    if (succ.is_empty()) continue;
                    int via = static_cast<int>(joint_edges[static_cast<std::size_t>(id)].size());
                    joint_edges[static_cast<std::size_t>(id)].push_back(je);
                    bool fresh =
                        seen.find({{je.s_target, je.t_target}, succ.key()}) == seen.end();
                    int tid = intern(je.s_target, je.t_target, succ, id, via);
                    if (fresh) work.push_back(tid);
                }
        }
    }

    RefinementResult res;
    if (!violation) {
        res.holds = true;
        return res;
    }

    // Concretize: walk back to the initial state, then forward with
    // explicit delays.
    res.holds = false;
    Counterexample cex;
    cex.kind = violation->kind;
    if (violation->action >= 0)
        cex.action = s.actions[static_cast<std::size_t>(violation->action)].name;

    std::vector<int> path;  // state indices from initial to violation
    for (int id = violation->state; id >= 0; id = parent_state[static_cast<std::size_t>(id)])
        path.push_back(id);
    std::reverse(path.begin(), path.end());

    // backward targets
    std::vector<Federation> targets(path.size(), Federation(dim));
    targets.back() = violation->witness;
    for (std::size_t i = path.size(); i-- > 1;) {
        int id = path[i];
        const JointEdge& je =
            joint_edges[static_cast<std::size_t>(path[i - 1])]
                       [static_cast<std::size_t>(parent_edge[static_cast<std::size_t>(id)])];
        Federation pre = targets[i];
        for (ClockId c : je.resets) {
            Federation pinned(dim);
            for (const auto& m : pre.members()) pinned.add(m.constrained(c, 0, Bound::le_zero()));
            pre = pinned;
        }
        pre = pre.free(je.resets).and_guard(je.guard);
        targets[i - 1] =
            Federation(states[static_cast<std::size_t>(path[i - 1])].zone).intersect(pre.down());
        if (targets[i - 1].is_empty())
            throw InternalError("counterexample concretization lost the trace");
    }

    // forward walk with concrete delays (in scaled units; divide at the end)
    std::vector<Rational> u(static_cast<std::size_t>(dim), Rational(0));
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const JointEdge& je =
            joint_edges[static_cast<std::size_t>(path[i])]
                       [static_cast<std::size_t>(parent_edge[static_cast<std::size_t>(path[i + 1])])];
        // delay into the guard ∧ pre(target filter)
        Federation pre = targets[i + 1];
        for (ClockId c : je.resets) {
            Federation pinned(dim);
            for (const auto& m : pre.members()) pinned.add(m.constrained(c, 0, Bound::le_zero()));
            pre = pinned;
        }
        pre = pre.free(je.resets).and_guard(je.guard);
        Rational step_delay(-1);
        for (const auto& m : pre.members()) {
            Rational lo, hi;
            bool lo_s, hi_s, hi_unb;
            if (m.delay_interval(u, lo, lo_s, hi, hi_s, hi_unb)) {
                Rational d;
                if (!lo_s) d = lo;
                else if (hi_unb) d = lo + 1;
                else d = (lo + hi) / 2;
                step_delay = d;
                break;
            }
        }
        if (step_delay < 0) throw InternalError("counterexample concretization: no delay fits");
        for (int c = 1; c < dim; ++c) u[static_cast<std::size_t>(c)] += step_delay;
        for (ClockId c : je.resets) u[static_cast<std::size_t>(c)] = 0;
        CounterexampleStep cs;
        cs.delay = step_delay / factor;
        cs.action = s.actions[static_cast<std::size_t>(je.action)].name;
        cs.polarity = je.polarity;
        cex.steps.push_back(cs);
    }
    // final delay into the violating region
    {
        Rational final_delay(-1);
        for (const auto& m : violation->witness.members()) {
            Rational lo, hi;
            bool lo_s, hi_s, hi_unb;
            if (m.delay_interval(u, lo, lo_s, hi, hi_s, hi_unb)) {
                if (!lo_s) final_delay = lo;
                else if (hi_unb) final_delay = lo + 1;
                else final_delay = (lo + hi) / 2;
                break;
            }
        }
        if (final_delay < 0)
            throw InternalError("counterexample concretization: violation unreachable");
        cex.final_delay = final_delay / factor;
    }
    std::ostringstream detail;
    if (violation->kind == "delay") {
        detail << "the left side may delay beyond the right side's invariant";
    } else if (violation->kind == "output") {
        detail << "output '" << cex.action << "' is enabled on the left but unmatched";
    } else {
        detail << "input '" << cex.action << "' is offered by the right side but unanswerable";
    }
    cex.detail = detail.str();
    res.counterexample = std::move(cex);
    return res;
}

RefinementResult check_robust_satisfaction(const Tioa& impl, const Tioa& spec, const Delta& d,
                                           const ZoneGraphLimits& limits) {
    Tioa perturbed = perturb_implementation(impl, d);
    return check_refinement(perturbed, spec, limits);
}

}  // namespace robusta

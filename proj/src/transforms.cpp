#include "robusta/transforms.hpp"

#include <algorithm>

namespace robusta {

Delta Delta::of(Rational v) {
    if (v < 0) throw ModelError("perturbation must be nonnegative");
    return Delta{false, std::move(v)};
}

// ── Guard rewrites ──────────────────────────────────────────────────────────

namespace {

/// sign = +1 enlarges, −1 restricts.
Guard shift_guard(const Guard& g, const Delta& d, int sign) {
    Guard out = g;
    for (auto& a : out.atoms) {
        int dir = is_upper(a.rel) ? sign : -sign;
        if (d.symbolic)
            a.bound.delta_coeff += dir;
        else
            a.bound.base += Rational(dir) * d.value;
    }
    return out;
}

}  // namespace

Guard enlarge_guard(const Guard& g, const Delta& d) { return shift_guard(g, d, +1); }
Guard restrict_guard(const Guard& g, const Delta& d) { return shift_guard(g, d, -1); }

// ── Shared helpers ──────────────────────────────────────────────────────────

namespace {

/// Complement of a union of (possibly rational-constant) guards as disjoint
/// convex guards, computed exactly by scaling to integers internally.
std::vector<Guard> complement_of_union(const std::vector<Guard>& guards, int dim) {
    std::vector<Rational> consts;
    for (const auto& g : guards) {
        if (!g.delta_atoms.empty() || g.is_parametric())
            throw InternalError("complement_of_union expects concrete guards");
        for (const auto& a : g.atoms) consts.push_back(a.bound.base);
    }
    BigInt f = lcm_denominators(consts);
    Rational factor(f);

    Federation covered(dim);
    for (const auto& g : guards) {
        Guard scaled = g;
        for (auto& a : scaled.atoms) a.bound.base *= factor;
        covered.add(guard_to_dbm(scaled, dim));
    }
    Federation gaps = Federation::universe(dim).subtract(covered);

    std::vector<Guard> out;
    for (const auto& z : gaps.reduce().members()) {
        Guard g = dbm_to_guard(z);
        for (auto& a : g.atoms) a.bound.base /= factor;
        out.push_back(g);
    }
    return out;
}

LocationId ensure_universal(Tioa& a) {
    for (std::size_t i = 0; i < a.locations.size(); ++i)
        if (a.locations[i].flags.universal) return static_cast<LocationId>(i);
    if (a.find_location(kUniversalLocationName))
        throw ModelError("location name " + std::string(kUniversalLocationName) + " is reserved");
    Location univ;
    univ.name = kUniversalLocationName;
    univ.flags.universal = true;
    a.locations.push_back(univ);
    LocationId id = static_cast<LocationId>(a.locations.size() - 1);
    for (std::size_t act = 0; act < a.actions.size(); ++act)
        a.edges.push_back(Edge{id, static_cast<ActionId>(act), Guard::top(), {}, id});
    return id;
}

}  // namespace

Tioa materialize_universal(const Tioa& a) {
    Tioa out = a;
    for (std::size_t q = 0; q < out.locations.size(); ++q) {
        if (!out.locations[q].flags.universal) continue;
        LocationId id = static_cast<LocationId>(q);
        for (std::size_t act = 0; act < out.actions.size(); ++act) {
            bool present = false;
            for (const auto& e : out.edges)
                if (e.source == id && e.action == static_cast<ActionId>(act) && e.target == id &&
                    e.guard.is_true() && e.resets.empty()) {
                    present = true;
                    break;
                }
            if (!present)
                out.edges.push_back(Edge{id, static_cast<ActionId>(act), Guard::top(), {}, id});
        }
    }
    return out;
}

// ── Δ-perturbation ──────────────────────────────────────────────────────────

Tioa perturb_implementation(const Tioa& impl, const Delta& d, const PerturbOptions& opt) {
    if (d.symbolic) throw ModelError("the perturbation of an implementation must be concrete");
    Tioa out = impl;
    out.name = impl.name + "_pert";

    for (auto& e : out.edges) {
        Polarity pol = out.actions[static_cast<std::size_t>(e.action)].polarity;
        e.guard = pol == Polarity::Output ? enlarge_guard(e.guard, d) : restrict_guard(e.guard, d);
    }
    for (auto& l : out.locations) l.invariant = enlarge_guard(l.invariant, d);

    // Redirect every input not accepted after restriction.
    LocationId univ = -1;
    std::vector<Edge> redirects;
    for (std::size_t q = 0; q < out.locations.size(); ++q) {
        for (std::size_t act = 0; act < out.actions.size(); ++act) {
            if (out.actions[act].polarity != Polarity::Input) continue;
            std::vector<Guard> accepted;
            for (const auto& e : out.edges)
                if (e.source == static_cast<LocationId>(q) &&
                    e.action == static_cast<ActionId>(act))
                    accepted.push_back(e.guard);
            std::vector<Guard> gaps = complement_of_union(accepted, out.dim());
            if (gaps.empty()) continue;
            if (univ < 0) univ = ensure_universal(out);
            for (auto& g : gaps)
                redirects.push_back(Edge{static_cast<LocationId>(q),
                                         static_cast<ActionId>(act), std::move(g), {}, univ});
        }
    }
    (void)opt;
    for (auto& e : redirects) out.edges.push_back(std::move(e));
    return out;
}

Tioa enlarge_spec_outputs(const Tioa& spec, const Delta& d) {
    Tioa out = spec;
    for (auto& e : out.edges)
        if (out.actions[static_cast<std::size_t>(e.action)].polarity == Polarity::Output)
            e.guard = enlarge_guard(e.guard, d);
    for (auto& l : out.locations) l.invariant = enlarge_guard(l.invariant, d);
    return out;
}

// ── Consistency game ────────────────────────────────────────────────────────

namespace {

/// Commit window of one output edge: the points from which firing survives
/// every perturbation up to 2Δ. Single-clock upper bounds (of the guard and
/// of the target invariant over unreset clocks) shrink by 2Δ; lower bounds
/// and clock differences are delay-tolerant and stay.
ParamPoly commit_window(const Tioa& a, const Edge& e, const Guard& source_inv) {
    const int clocks = a.clock_count();
    Guard shifted;
    for (const auto& atom : e.guard.atoms) {
        AtomicConstraint c = atom;
        if (atom.is_single_clock() && is_upper(atom.rel)) c.bound.delta_coeff -= 2;
        shifted.atoms.push_back(c);
    }
    const Guard& tinv = a.locations[static_cast<std::size_t>(e.target)].invariant;
    for (const auto& atom : tinv.atoms) {
        bool resets = std::find(e.resets.begin(), e.resets.end(), atom.left) != e.resets.end();
        if (resets) {
            if (atom.bound.base < 0) {
                AtomicConstraint never;
                never.rel = Rel::Lt;
                never.bound = LinExpr(Rational(0));
                shifted.atoms.push_back(never);
            }
            continue;
        }
        AtomicConstraint c = atom;
        c.bound.delta_coeff -= 2;
        shifted.atoms.push_back(c);
    }
    return ParamPoly::orthant(clocks).and_guard(shifted).and_guard(source_inv);
}

bool invariant_bounds_delay(const Guard& inv) { return !inv.atoms.empty(); }

}  // namespace

PolySet err_region(const Tioa& spec, LocationId q) {
    const int clocks = spec.clock_count();
    const Guard& inv = spec.locations[static_cast<std::size_t>(q)].invariant;
    if (!invariant_bounds_delay(inv)) return {};  // can delay forever

    ParamPoly inv_poly = ParamPoly::orthant(clocks).and_guard(inv);
    PolySet reach;
    for (EdgeId eid : spec.edges_from(q)) {
        const Edge& e = spec.edges[static_cast<std::size_t>(eid)];
        if (spec.actions[static_cast<std::size_t>(e.action)].polarity != Polarity::Output)
            continue;
        ParamPoly window = commit_window(spec, e, inv);
        if (window.is_empty()) continue;
        ParamPoly back = window.elapse_past().intersect(inv_poly);
        if (!back.is_empty()) reach.push_back(back);
    }
    return poly_subtract({inv_poly}, reach);
}

namespace {

/// err edges live at the locations of `err_source`; its location ids must
/// be a prefix of `game`'s.
void attach_err_edges(Tioa& game, const Tioa& err_source, LocationId bad_id) {
    if (game.find_action(kErrActionName))
        throw ModelError("action name " + std::string(kErrActionName) + " is reserved");
    game.actions.push_back(Action{kErrActionName, Polarity::Input});
    ActionId err_act = static_cast<ActionId>(game.actions.size() - 1);
    for (std::size_t q = 0; q < err_source.locations.size(); ++q) {
        for (const auto& piece : err_region(err_source, static_cast<LocationId>(q))) {
            if (piece.is_empty()) continue;
            game.edges.push_back(
                Edge{static_cast<LocationId>(q), err_act, piece.to_guard(), {}, bad_id});
        }
    }
}

}  // namespace

GameAutomaton build_consistency_game(const Tioa& spec) {
    if (spec.find_location(kBadLocationName))
        throw ModelError("location name " + std::string(kBadLocationName) + " is reserved");

    GameAutomaton game;
    game.verifier = Polarity::Output;
    game.automaton = materialize_universal(spec);
    Tioa& a = game.automaton;
    a.name = spec.name + "_cons";

    Location bad;
    bad.name = kBadLocationName;
    bad.flags.bad = true;
    a.locations.push_back(bad);
    LocationId bad_id = static_cast<LocationId>(a.locations.size() - 1);
    game.bad.insert(bad_id);

    attach_err_edges(a, a, bad_id);
    return game;
}

GameAutomaton build_robust_consistency_game(const Tioa& spec) {
    Tioa prepared = materialize_universal(spec);
    GameAutomaton game =
        build_robust_game_automaton(prepared, {}, Delta::param(), Polarity::Output);
    game.automaton.name = spec.name + "_cons_rob";
    LocationId bad_id = *game.bad.begin();
    attach_err_edges(game.automaton, prepared, bad_id);
    return game;
}

GameAutomaton build_usefulness_game(const Tioa& spec) {
    GameAutomaton game;
    game.verifier = Polarity::Input;
    game.automaton = materialize_universal(spec);
    game.automaton.name = spec.name + "_use";
    for (std::size_t q = 0; q < spec.locations.size(); ++q)
        if (spec.locations[q].flags.und) game.bad.insert(static_cast<LocationId>(q));
    return game;
}

// ── Robust game automaton ───────────────────────────────────────────────────

GameAutomaton build_robust_game_automaton(const Tioa& in, const std::set<LocationId>& bad,
                                          const Delta& d, Polarity verifier) {
    if (in.find_clock(kRobClockName))
        throw ModelError("clock name " + std::string(kRobClockName) + " is reserved");
    if (in.find_action(kRobActionName))
        throw ModelError("action name " + std::string(kRobActionName) + " is reserved");

    GameAutomaton game;
    game.verifier = verifier;
    Tioa& out = game.automaton;
    out = in;
    out.name = in.name + "_rob";
    out.clock_names.push_back(kRobClockName);
    ClockId y = static_cast<ClockId>(out.clock_names.size());

    out.actions.push_back(Action{kRobActionName, opposite(verifier)});
    ActionId rob = static_cast<ActionId>(out.actions.size() - 1);

    game.bad = bad;
    LocationId bad_target = -1;
    for (LocationId b : bad) bad_target = bad_target < 0 ? b : std::min(bad_target, b);
    if (bad_target < 0) {
        if (out.find_location(kBadLocationName))
            throw ModelError("location name " + std::string(kBadLocationName) + " is reserved");
        Location bl;
        bl.name = kBadLocationName;
        bl.flags.bad = true;
        out.locations.push_back(bl);
        bad_target = static_cast<LocationId>(out.locations.size() - 1);
        game.bad.insert(bad_target);
    }

    LinExpr delta_bound = d.symbolic ? LinExpr{Rational(0), Rational(1)} : LinExpr{d.value};
    Guard alpha_inv;
    alpha_inv.atoms.push_back(AtomicConstraint{y, kRefClock, Rel::Le, delta_bound});
    Guard y_eq_delta;
    y_eq_delta.atoms.push_back(AtomicConstraint{y, kRefClock, Rel::Le, delta_bound});
    y_eq_delta.atoms.push_back(AtomicConstraint{y, kRefClock, Rel::Ge, delta_bound});

    std::vector<Edge> new_edges;
    std::vector<EdgeId> wrapped;
    for (std::size_t i = 0; i < in.edges.size(); ++i) {
        Polarity pol = in.actions[static_cast<std::size_t>(in.edges[i].action)].polarity;
        if (pol == verifier)
            wrapped.push_back(static_cast<EdgeId>(i));
        else
            new_edges.push_back(in.edges[i]);  // spoiler edges stay at q
    }

    for (EdgeId eid : wrapped) {
        const Edge& e = in.edges[static_cast<std::size_t>(eid)];
        const std::string& qname = in.locations[static_cast<std::size_t>(e.source)].name;

        Location alpha;
        alpha.name = qname + "@a" + std::to_string(eid);
        alpha.invariant = alpha_inv;
        out.locations.push_back(alpha);
        LocationId alpha_id = static_cast<LocationId>(out.locations.size() - 1);

        Location beta;
        beta.name = qname + "@b" + std::to_string(eid);
        beta.invariant = alpha_inv;
        out.locations.push_back(beta);
        LocationId beta_id = static_cast<LocationId>(out.locations.size() - 1);

        new_edges.push_back(Edge{e.source, e.action, e.guard, {y}, alpha_id});
        new_edges.push_back(Edge{alpha_id, e.action, y_eq_delta, {y}, beta_id});
        new_edges.push_back(Edge{alpha_id, rob, e.guard, e.resets, e.target});
        new_edges.push_back(Edge{beta_id, rob, e.guard, e.resets, e.target});
        for (const auto& piece : complement_guard(e.guard)) {
            new_edges.push_back(Edge{alpha_id, rob, piece, {}, bad_target});
            new_edges.push_back(Edge{beta_id, rob, piece, {}, bad_target});
        }
        for (const auto& other : in.edges) {
            if (other.source != e.source) continue;
            if (in.actions[static_cast<std::size_t>(other.action)].polarity == verifier) continue;
            new_edges.push_back(Edge{alpha_id, other.action, other.guard, other.resets, other.target});
            new_edges.push_back(Edge{beta_id, other.action, other.guard, other.resets, other.target});
        }
    }
    out.edges = std::move(new_edges);
    return game;
}

RobustCounts robust_game_counts(const Tioa& a, const std::set<LocationId>& bad,
                                Polarity verifier) {
    RobustCounts c;
    int verifier_edges = 0;
    int edges = 0;
    for (const auto& e : a.edges) {
        Polarity pol = a.actions[static_cast<std::size_t>(e.action)].polarity;
        if (pol != verifier) {
            ++edges;  // kept spoiler edge
            continue;
        }
        ++verifier_edges;
        int spoiler_at_source = 0;
        for (const auto& other : a.edges)
            if (other.source == e.source &&
                a.actions[static_cast<std::size_t>(other.action)].polarity != verifier)
                ++spoiler_at_source;
        int components = static_cast<int>(complement_guard(e.guard).size());
        edges += 2 /*commit+handover*/ + 2 /*rob continue*/ + 2 * components +
                 2 * spoiler_at_source;
    }
    c.locations = static_cast<int>(a.locations.size()) + 2 * verifier_edges +
                  (bad.empty() ? 1 : 0);
    c.edges = edges;
    return c;
}

}  // namespace robusta

#include "robusta/validate.hpp"

#include "robusta/transforms.hpp"

#include <algorithm>
#include <sstream>

namespace robusta {

namespace {

/// Exact rational-constant zone ops need integers: scale a guard in place.
Guard scaled_guard(const Guard& g, const Rational& factor) {
    Guard out = g;
    for (auto& a : out.atoms) a.bound.base *= factor;
    return out;
}

void require_concrete(const Tioa& a, const char* op) {
    if (a.is_parametric())
        throw ModelError(std::string(op) + " expects a non-parametric model");
}

}  // namespace

ValidationReport validate_spec(const Tioa& a) {
    require_concrete(a, "validate_spec");
    ValidationReport rep;
    Rational f = choose_scale_factor(a);
    const int dim = a.dim();

    for (std::size_t q = 0; q < a.locations.size(); ++q) {
        LocationId loc = static_cast<LocationId>(q);
        auto outgoing = a.edges_from(loc);
        Dbm inv = guard_to_dbm(scaled_guard(a.locations[q].invariant, f), dim);

        // determinism: same-action edges with intersecting guard zones
        for (std::size_t i = 0; i < outgoing.size(); ++i)
            for (std::size_t j = i + 1; j < outgoing.size(); ++j) {
                const Edge& e1 = a.edges[static_cast<std::size_t>(outgoing[i])];
                const Edge& e2 = a.edges[static_cast<std::size_t>(outgoing[j])];
                if (e1.action != e2.action) continue;
                Dbm z1 = guard_to_dbm(scaled_guard(e1.guard, f), dim).intersect(inv);
                Dbm z2 = guard_to_dbm(scaled_guard(e2.guard, f), dim);
                if (z1.intersects(z2))
                    rep.determinism.push_back(
                        DeterminismViolation{loc, e1.action, outgoing[i], outgoing[j]});
            }

        // input-enabledness gaps
        for (std::size_t act = 0; act < a.actions.size(); ++act) {
            if (a.actions[act].polarity != Polarity::Input) continue;
            Federation covered(dim);
            for (EdgeId eid : outgoing) {
                const Edge& e = a.edges[static_cast<std::size_t>(eid)];
                if (e.action != static_cast<ActionId>(act)) continue;
                covered.add(guard_to_dbm(scaled_guard(e.guard, f), dim));
            }
            Federation gap = Federation(inv).subtract(covered).reduce();
            if (gap.is_empty()) continue;
            InputGap ig;
            ig.location = loc;
            ig.action = static_cast<ActionId>(act);
            for (const auto& z : gap.members()) {
                Guard g = dbm_to_guard(z);
                for (auto& atom : g.atoms) atom.bound.base /= f;
                ig.gap.push_back(g);
            }
            rep.input_gaps.push_back(std::move(ig));
        }
    }
    return rep;
}

std::string ValidationReport::to_string(const Tioa& a) const {
    std::ostringstream oss;
    if (determinism.empty() && input_gaps.empty()) {
        oss << "ok: deterministic and input-enabled\n";
        return oss.str();
    }
    for (const auto& d : determinism)
        oss << "determinism: location " << a.locations[static_cast<std::size_t>(d.location)].name
            << ", action " << a.actions[static_cast<std::size_t>(d.action)].name << ", edges #"
            << d.first << " and #" << d.second << " overlap\n";
    for (const auto& g : input_gaps) {
        oss << "input gap: location " << a.locations[static_cast<std::size_t>(g.location)].name
            << ", input " << a.actions[static_cast<std::size_t>(g.action)].name << ":";
        for (const auto& piece : g.gap) oss << " [" << guard_to_string(piece, a.clock_names) << "]";
        oss << "\n";
    }
    return oss.str();
}

Tioa complete_inputs(const Tioa& a, const CompletionOptions& opt) {
    require_concrete(a, "complete_inputs");
    ValidationReport rep = validate_spec(a);
    if (rep.input_gaps.empty()) return a;
    Tioa out = a;
    LocationId univ = -1;
    if (opt.target == CompletionTarget::Universal) {
        for (std::size_t i = 0; i < out.locations.size(); ++i)
            if (out.locations[i].flags.universal) univ = static_cast<LocationId>(i);
        if (univ >= 0) {
            out = materialize_universal(out);
        } else {
            Location u;
            u.name = kUniversalLocationName;
            u.flags.universal = true;
            out.locations.push_back(u);
            univ = static_cast<LocationId>(out.locations.size() - 1);
            for (std::size_t act = 0; act < out.actions.size(); ++act)
                out.edges.push_back(Edge{univ, static_cast<ActionId>(act), Guard::top(), {}, univ});
        }
    }
    for (const auto& gap : rep.input_gaps)
        for (const auto& g : gap.gap) {
            LocationId target =
                opt.target == CompletionTarget::SelfLoop ? gap.location : univ;
            out.edges.push_back(Edge{gap.location, gap.action, g, {}, target});
        }
    return out;
}

Tioa scale_constants(const Tioa& a, const Rational& factor) {
    if (factor <= 0) throw ModelError("scale factor must be positive");
    Tioa out = a;
    auto scale = [&](Guard& g) {
        for (auto& atom : g.atoms) atom.bound.base *= factor;
        for (auto& da : g.delta_atoms) da.threshold *= factor;
    };
    for (auto& l : out.locations) scale(l.invariant);
    for (auto& e : out.edges) scale(e.guard);
    return out;
}

Rational choose_scale_factor(const Tioa& a, const std::vector<Rational>& extra) {
    std::vector<Rational> consts = a.all_constants();
    for (const auto& r : extra) consts.push_back(r);
    return Rational(lcm_denominators(consts));
}

ScaledModel scale_to_integers(const Tioa& a, const std::vector<Rational>& extra) {
    Rational f = choose_scale_factor(a, extra);
    return ScaledModel{scale_constants(a, f), f};
}

}  // namespace robusta

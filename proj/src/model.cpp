#include "robusta/model.hpp"

#include <algorithm>
#include <sstream>

namespace robusta {

std::string rel_to_string(Rel r) {
    switch (r) {
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Gt: return ">";
        case Rel::Ge: return ">=";
    }
    return "?";
}

std::string linexpr_to_string(const LinExpr& e) {
    std::string s = rational_to_string(e.base);
    if (e.delta_coeff != 0) {
        if (e.delta_coeff > 0) s += " + ";
        else s += " - ";
        Rational c = abs(e.delta_coeff);
        if (c != 1) s += rational_to_string(c) + "*";
        s += "D";
    }
    return s;
}

bool DeltaAtom::holds_at(const Rational& delta) const {
    switch (rel) {
        case Rel::Lt: return delta < threshold;
        case Rel::Le: return delta <= threshold;
        case Rel::Gt: return delta > threshold;
        case Rel::Ge: return delta >= threshold;
    }
    return false;
}

bool Guard::is_parametric() const {
    if (!delta_atoms.empty()) return true;
    return std::any_of(atoms.begin(), atoms.end(),
                       [](const AtomicConstraint& a) { return !a.bound.is_constant(); });
}

bool guard_sat(const Guard& g, const std::vector<Rational>& valuation, const Rational& delta) {
    auto value = [&](ClockId c) -> Rational {
        if (c == kRefClock) return Rational(0);
        return valuation.at(static_cast<std::size_t>(c));
    };
    for (const auto& da : g.delta_atoms)
        if (!da.holds_at(delta)) return false;
    for (const auto& a : g.atoms) {
        Rational lhs = value(a.left) - value(a.right);
        Rational rhs = a.bound.at(delta);
        bool ok = false;
        switch (a.rel) {
            case Rel::Lt: ok = lhs < rhs; break;
            case Rel::Le: ok = lhs <= rhs; break;
            case Rel::Gt: ok = lhs > rhs; break;
            case Rel::Ge: ok = lhs >= rhs; break;
        }
        if (!ok) return false;
    }
    return true;
}

std::string guard_to_string(const Guard& g, const std::vector<std::string>& clock_names) {
    if (g.is_true()) return "true";
    auto name = [&](ClockId c) -> std::string {
        if (c == kRefClock) return "0";
        return clock_names.at(static_cast<std::size_t>(c) - 1);
    };
    std::ostringstream oss;
    bool first = true;
    for (const auto& a : g.atoms) {
        if (!first) oss << " && ";
        first = false;
        oss << name(a.left);
        if (a.right != kRefClock) oss << " - " << name(a.right);
        oss << " " << rel_to_string(a.rel) << " " << linexpr_to_string(a.bound);
    }
    for (const auto& da : g.delta_atoms) {
        if (!first) oss << " && ";
        first = false;
        oss << "D " << rel_to_string(da.rel) << " " << rational_to_string(da.threshold);
    }
    return oss.str();
}

std::optional<ActionId> Tioa::find_action(const std::string& n) const {
    for (std::size_t i = 0; i < actions.size(); ++i)
        if (actions[i].name == n) return static_cast<ActionId>(i);
    return std::nullopt;
}

std::optional<LocationId> Tioa::find_location(const std::string& n) const {
    for (std::size_t i = 0; i < locations.size(); ++i)
        if (locations[i].name == n) return static_cast<LocationId>(i);
    return std::nullopt;
}

std::optional<ClockId> Tioa::find_clock(const std::string& n) const {
    for (std::size_t i = 0; i < clock_names.size(); ++i)
        if (clock_names[i] == n) return static_cast<ClockId>(i + 1);
    return std::nullopt;
}

bool Tioa::is_parametric() const {
    for (const auto& l : locations)
        if (l.invariant.is_parametric()) return true;
    for (const auto& e : edges)
        if (e.guard.is_parametric()) return true;
    return false;
}

namespace {

Guard instantiate_guard(const Guard& g, const Rational& delta) {
    Guard out;
    for (const auto& da : g.delta_atoms) {
        if (!da.holds_at(delta)) {
            // Unsatisfiable at this delta; keep the edge but with a false
            // guard so edge indices stay aligned with the parametric model.
            AtomicConstraint never;
            never.left = kRefClock;
            never.right = kRefClock;
            never.rel = Rel::Lt;
            never.bound = LinExpr(Rational(0));
            out.atoms.clear();
            out.atoms.push_back(never);
            out.delta_atoms.clear();
            return out;
        }
    }
    for (const auto& a : g.atoms) {
        AtomicConstraint c = a;
        c.bound = LinExpr(a.bound.at(delta));
        out.atoms.push_back(c);
    }
    return out;
}

}  // namespace

Tioa Tioa::instantiate_delta(const Rational& delta) const {
    Tioa out = *this;
    for (auto& l : out.locations) l.invariant = instantiate_guard(l.invariant, delta);
    for (auto& e : out.edges) e.guard = instantiate_guard(e.guard, delta);
    return out;
}

std::vector<EdgeId> Tioa::edges_from(LocationId q) const {
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].source == q) out.push_back(static_cast<EdgeId>(i));
    return out;
}

std::vector<Rational> Tioa::all_constants() const {
    std::vector<Rational> out;
    auto collect = [&](const Guard& g) {
        for (const auto& a : g.atoms) {
            out.push_back(a.bound.base);
            out.push_back(a.bound.delta_coeff);
        }
        for (const auto& da : g.delta_atoms) out.push_back(da.threshold);
    };
    for (const auto& l : locations) collect(l.invariant);
    for (const auto& e : edges) collect(e.guard);
    return out;
}

bool structurally_equal(const Tioa& a, const Tioa& b) {
    return a.clock_names == b.clock_names && a.actions == b.actions &&
           a.locations == b.locations && a.initial == b.initial && a.edges == b.edges;
}

std::string tioa_to_string(const Tioa& a) {
    std::ostringstream oss;
    oss << "automaton " << a.name << "\n";
    oss << "  clocks:";
    for (const auto& c : a.clock_names) oss << " " << c;
    oss << "\n";
    for (const auto& act : a.actions)
        oss << "  action " << act.name << (act.polarity == Polarity::Input ? "?" : "!") << "\n";
    for (std::size_t i = 0; i < a.locations.size(); ++i) {
        const auto& l = a.locations[i];
        oss << "  location " << l.name;
        if (!l.invariant.is_true()) oss << " [" << guard_to_string(l.invariant, a.clock_names) << "]";
        if (l.flags.initial) oss << " initial";
        if (l.flags.universal) oss << " universal";
        if (l.flags.bad) oss << " bad";
        if (l.flags.und) oss << " und";
        oss << "\n";
    }
    for (const auto& e : a.edges) {
        const auto& act = a.actions[static_cast<std::size_t>(e.action)];
        oss << "  edge " << a.locations[static_cast<std::size_t>(e.source)].name << " -> "
            << a.locations[static_cast<std::size_t>(e.target)].name << " " << act.name
            << (act.polarity == Polarity::Input ? "?" : "!");
        oss << " [" << guard_to_string(e.guard, a.clock_names) << "]";
        if (!e.resets.empty()) {
            oss << " {";
            for (std::size_t i = 0; i < e.resets.size(); ++i) {
                if (i) oss << ",";
                oss << a.clock_names[static_cast<std::size_t>(e.resets[i]) - 1];
            }
            oss << "}";
        }
        oss << "\n";
    }
    return oss.str();
}

}  // namespace robusta

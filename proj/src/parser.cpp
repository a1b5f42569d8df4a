#include "robusta/parser.hpp"

#include "robusta/compose.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace robusta {

namespace {

struct Cursor {
    const std::string& s;
    int line;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line, static_cast<int>(pos) + 1, msg);
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat_word(const std::string& w) {
        skip_ws();
        if (s.compare(pos, w.size(), w) == 0) {
            std::size_t end = pos + w.size();
            if (end >= s.size() ||
                !(std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_')) {
                pos = end;
                return true;
            }
        }
        return false;
    }
    bool eat_symbol(const std::string& sym) {
        skip_ws();
        if (s.compare(pos, sym.size(), sym) == 0) {
            pos += sym.size();
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '.'))
            ++pos;
        if (pos == start) fail("expected identifier");
        return s.substr(start, pos - start);
    }
    std::string number() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        bool digits = false;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' || s[pos] == '/'))
            digits = true, ++pos;
        if (!digits) fail("expected number");
        return s.substr(start, pos - start);
    }
};

/// atom := ident ('-' ident)? (rel|'==') number
void parse_atom_into(Cursor& c, const Tioa& a, Guard& g) {
    std::string left = c.ident();
    auto lc = a.find_clock(left);
    if (!lc) c.fail("undeclared clock '" + left + "'");
    ClockId right = kRefClock;
    if (c.eat('-')) {
        std::string rn = c.ident();
        auto rc = a.find_clock(rn);
        if (!rc) c.fail("undeclared clock '" + rn + "'");
        right = *rc;
    }
    c.skip_ws();
    bool eq = c.eat_symbol("==");
    Rel rel = Rel::Le;
    if (!eq) {
        if (c.eat_symbol("<=")) rel = Rel::Le;
        else if (c.eat_symbol(">=")) rel = Rel::Ge;
        else if (c.eat_symbol("<")) rel = Rel::Lt;
        else if (c.eat_symbol(">")) rel = Rel::Gt;
        else c.fail("expected relation (<, <=, >, >=, ==)");
    }
    Rational k;
    try {
        k = parse_rational(c.number());
    } catch (const std::invalid_argument& e) {
        c.fail(e.what());
    }
    if (eq) {
        g.atoms.push_back(AtomicConstraint{*lc, right, Rel::Le, LinExpr(k)});
        g.atoms.push_back(AtomicConstraint{*lc, right, Rel::Ge, LinExpr(k)});
    } else {
        g.atoms.push_back(AtomicConstraint{*lc, right, rel, LinExpr(k)});
    }
}

Guard parse_guard_cursor(Cursor& c, const Tioa& a) {
    Guard g;
    if (c.eat_word("true")) return g;
    parse_atom_into(c, a, g);
    while (c.eat_symbol("&&")) parse_atom_into(c, a, g);
    return g;
}

std::string strip_comment(const std::string& line) {
    auto h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

Guard parse_guard(const std::string& text, const Tioa& context) {
    Cursor c{text, 1, 0};
    Guard g = parse_guard_cursor(c, context);
    if (!c.done()) c.fail("trailing characters after guard");
    return g;
}

ModelFile parse_model_text(const std::string& text) {
    ModelFile out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    Tioa building;
    bool in_block = false;
    struct PendingEdge {
        int line;
        std::string text;
    };
    std::vector<PendingEdge> pending;

    auto finish_block = [&]() {
        Tioa& a = building;
        if (a.initial < 0)
            throw ParseError(lineno, 1, "automaton '" + a.name + "' has no [initial] location");
        for (const auto& pe : pending) {
            Cursor c{pe.text, pe.line, 0};
            std::string src = c.ident();
            auto sl = a.find_location(src);
            if (!sl) c.fail("undeclared location '" + src + "'");
            if (!c.eat_symbol("->")) c.fail("expected '->'");
            std::string dst = c.ident();
            auto dl = a.find_location(dst);
            if (!dl) c.fail("undeclared location '" + dst + "'");
            std::string act = c.ident();
            char suffix = 0;
            if (c.peek('?') || c.peek('!')) {
                suffix = c.s[c.pos];
                ++c.pos;
            }
            auto ai = a.find_action(act);
            if (!ai) c.fail("undeclared action '" + act + "'");
            Polarity pol = a.actions[static_cast<std::size_t>(*ai)].polarity;
            if (suffix == '?' && pol != Polarity::Input)
                c.fail("action '" + act + "' is an output, not written with '?'");
            if (suffix == '!' && pol != Polarity::Output)
                c.fail("action '" + act + "' is an input, not written with '!'");
            Edge e;
            e.source = *sl;
            e.target = *dl;
            e.action = *ai;
            while (c.eat('[')) {
                std::string key = c.ident();
                if (key == "guard") {
                    if (!c.eat(':')) c.fail("expected ':' after 'guard'");
                    e.guard = parse_guard_cursor(c, a);
                } else if (key == "reset") {
                    if (!c.eat(':')) c.fail("expected ':' after 'reset'");
                    do {
                        std::string cn = c.ident();
                        auto cc = a.find_clock(cn);
                        if (!cc) c.fail("undeclared clock '" + cn + "'");
                        e.resets.push_back(*cc);
                    } while (c.eat(','));
                    std::sort(e.resets.begin(), e.resets.end());
                    e.resets.erase(std::unique(e.resets.begin(), e.resets.end()),
                                   e.resets.end());
                } else {
                    c.fail("unknown edge attribute '" + key + "'");
                }
                if (!c.eat(']')) c.fail("expected ']'");
            }
            if (!c.done()) c.fail("trailing characters on edge");
            a.edges.push_back(std::move(e));
        }
        pending.clear();
        out.automata.push_back(std::move(a));
        in_block = false;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        if (blank(line)) continue;
        Cursor c{line, lineno, 0};

        if (c.eat_word("automaton")) {
            if (in_block) throw ParseError(lineno, 1, "nested automaton block");
            building = Tioa{};
            building.name = c.ident();
            if (!c.done()) c.fail("trailing characters");
            in_block = true;
        } else if (c.eat_word("end")) {
            if (!in_block) throw ParseError(lineno, 1, "'end' outside an automaton block");
            finish_block();
        } else if (c.eat_word("system")) {
            if (in_block) throw ParseError(lineno, 1, "system inside an automaton block");
            SystemDef sd;
            sd.name = c.ident();
            if (!c.eat('=')) c.fail("expected '='");
            sd.components.push_back(c.ident());
            while (c.eat_symbol("||")) sd.components.push_back(c.ident());
            if (!c.done()) c.fail("trailing characters");
            out.systems.push_back(std::move(sd));
        } else if (in_block && c.eat_word("clock")) {
            while (!c.done()) {
                std::string n = c.ident();
                if (building.find_clock(n)) c.fail("duplicate clock '" + n + "'");
                building.clock_names.push_back(n);
            }
        } else if (in_block && c.eat_word("input")) {
            while (!c.done()) {
                std::string n = c.ident();
                if (building.find_action(n)) c.fail("duplicate action '" + n + "'");
                building.actions.push_back(Action{n, Polarity::Input});
            }
        } else if (in_block && c.eat_word("output")) {
            while (!c.done()) {
                std::string n = c.ident();
                if (building.find_action(n)) c.fail("duplicate action '" + n + "'");
                building.actions.push_back(Action{n, Polarity::Output});
            }
        } else if (in_block && c.eat_word("location")) {
            std::string n = c.ident();
            if (building.find_location(n)) c.fail("duplicate location '" + n + "'");
            Location l;
            l.name = n;
            while (c.eat('[')) {
                std::string key = c.ident();
                if (key == "invariant") {
                    if (!c.eat(':')) c.fail("expected ':' after 'invariant'");
                    l.invariant = parse_guard_cursor(c, building);
                    for (const auto& atom : l.invariant.atoms) {
                        if (atom.right != kRefClock)
                            c.fail("invariants must not contain clock differences");
                        if (!is_upper(atom.rel))
                            c.fail("invariants must be upper bounds (x < k or x <= k)");
                    }
                } else if (key == "initial") {
                    l.flags.initial = true;
                } else if (key == "universal") {
                    l.flags.universal = true;
                } else if (key == "bad") {
                    l.flags.bad = true;
                } else if (key == "und") {
                    l.flags.und = true;
                } else {
                    c.fail("unknown location attribute '" + key + "'");
                }
                if (!c.eat(']')) c.fail("expected ']'");
            }
            if (!c.done()) c.fail("trailing characters");
            if (l.flags.initial) {
                if (building.initial >= 0) c.fail("second [initial] location");
                building.initial = static_cast<LocationId>(building.locations.size());
            }
            if (l.flags.universal) {
                for (const auto& other : building.locations)
                    if (other.flags.universal) c.fail("second [universal] location");
            }
            building.locations.push_back(std::move(l));
        } else if (in_block && c.eat_word("edge")) {
            c.skip_ws();
            pending.push_back(PendingEdge{lineno, line.substr(c.pos)});
        } else {
            throw ParseError(lineno, 1, "unrecognized directive: '" + line + "'");
        }
    }
    if (in_block) throw ParseError(lineno, 1, "missing 'end'");

    for (const auto& sd : out.systems)
        for (const auto& comp : sd.components)
            if (!out.find_automaton(comp))
                throw ParseError(0, 0, "system '" + sd.name + "' references unknown automaton '" +
                                           comp + "'");
    return out;
}

ModelFile parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_text(buf.str());
}

const Tioa* ModelFile::find_automaton(const std::string& name) const {
    for (const auto& a : automata)
        if (a.name == name) return &a;
    return nullptr;
}

const SystemDef* ModelFile::find_system(const std::string& name) const {
    for (const auto& s : systems)
        if (s.name == name) return &s;
    return nullptr;
}

Tioa ModelFile::resolve(const std::string& name) const {
    if (name.empty()) {
        if (systems.size() == 1) return resolve(systems[0].name);
        if (automata.size() == 1) return automata[0];
        throw ModelError("model file defines several automata; pick one with --system");
    }
    if (const Tioa* a = find_automaton(name)) return *a;
    const SystemDef* sd = find_system(name);
    if (!sd) throw ModelError("no automaton or system named '" + name + "'");
    Tioa acc = *find_automaton(sd->components[0]);
    for (std::size_t i = 1; i < sd->components.size(); ++i)
        acc = parallel_compose(acc, *find_automaton(sd->components[i]));
    acc.name = sd->name;
    return acc;
}

// ── Serialization ───────────────────────────────────────────────────────────

std::string serialize_automaton(const Tioa& a) {
    std::ostringstream oss;
    oss << "automaton " << a.name << "\n";
    if (!a.clock_names.empty()) {
        oss << "  clock";
        for (const auto& c : a.clock_names) oss << " " << c;
        oss << "\n";
    }
    std::string inputs, outputs;
    for (const auto& act : a.actions)
        (act.polarity == Polarity::Input ? inputs : outputs) += " " + act.name;
    if (!inputs.empty()) oss << "  input" << inputs << "\n";
    if (!outputs.empty()) oss << "  output" << outputs << "\n";
    for (const auto& l : a.locations) {
        oss << "  location " << l.name;
        if (!l.invariant.is_true())
            oss << " [invariant: " << guard_to_string(l.invariant, a.clock_names) << "]";
        if (l.flags.initial) oss << " [initial]";
        if (l.flags.universal) oss << " [universal]";
        if (l.flags.bad) oss << " [bad]";
        if (l.flags.und) oss << " [und]";
        oss << "\n";
    }
    for (const auto& e : a.edges) {
        const Action& act = a.actions[static_cast<std::size_t>(e.action)];
        oss << "  edge " << a.locations[static_cast<std::size_t>(e.source)].name << " -> "
            << a.locations[static_cast<std::size_t>(e.target)].name << " " << act.name
            << (act.polarity == Polarity::Input ? "?" : "!");
        if (!e.guard.is_true())
            oss << " [guard: " << guard_to_string(e.guard, a.clock_names) << "]";
        if (!e.resets.empty()) {
            oss << " [reset: ";
            for (std::size_t i = 0; i < e.resets.size(); ++i) {
                if (i) oss << ", ";
                oss << a.clock_names[static_cast<std::size_t>(e.resets[i]) - 1];
            }
            oss << "]";
        }
        oss << "\n";
    }
    oss << "end\n";
    return oss.str();
}

std::string serialize_model(const ModelFile& m) {
    std::ostringstream oss;
    for (std::size_t i = 0; i < m.automata.size(); ++i) {
        if (i) oss << "\n";
        oss << serialize_automaton(m.automata[i]);
    }
    for (const auto& s : m.systems) {
        oss << "\nsystem " << s.name << " =";
        for (std::size_t i = 0; i < s.components.size(); ++i) {
            if (i) oss << " ||";
            oss << " " << s.components[i];
        }
        oss << "\n";
    }
    return oss.str();
}

}  // namespace robusta

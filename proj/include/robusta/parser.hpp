// ============================================================================
// parser.hpp — Model file format
// ============================================================================
//
// Line-oriented text format:
//
//   # comment
//   automaton Machine
//     clock x y
//     input coin
//     output cof tea
//     location Idle [initial]
//     location Serving [invariant: y <= 6] [bad]
//     edge Idle -> Serving coin? [guard: y <= 6 && x - y < 7/2] [reset: y]
//   end
//
//   system Uni = Machine || Researcher
//
// Guards are conjunctions of `x ≺ k` and `x - y ≺ k` with rational k
// (integers, fractions a/b, or decimals); `==` expands to `<= && >=`;
// `true` is the empty conjunction. Invariants accept only upper bounds on
// single clocks.
//
// ============================================================================

#ifndef ROBUSTA_PARSER_HPP
#define ROBUSTA_PARSER_HPP

#include "robusta/model.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace robusta {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l),
          column(c) {}
};

struct SystemDef {
    std::string name;
    std::vector<std::string> components;  // automaton names, composed left to right
};

struct ModelFile {
    std::vector<Tioa> automata;
    std::vector<SystemDef> systems;

    const Tioa* find_automaton(const std::string& name) const;
    const SystemDef* find_system(const std::string& name) const;

    /// Resolve a name to an automaton, composing systems. With an empty
    /// name: the only automaton, or the only system if one exists.
    Tioa resolve(const std::string& name = "") const;
};

ModelFile parse_model_text(const std::string& text);
ModelFile parse_model_file(const std::string& path);

/// Guard sub-grammar, reusable for CLI flags.
Guard parse_guard(const std::string& text, const Tioa& context);

std::string serialize_model(const ModelFile& m);
std::string serialize_automaton(const Tioa& a);

}  // namespace robusta

#endif  // ROBUSTA_PARSER_HPP

#include "robusta/models.hpp"

#include <sstream>

namespace robusta {

namespace {

// The machine of the introduction: after choice, the coin may arrive as
// late as y = 6, and serving must then finish instantly. Consistent, but
// not robustly so: no positive perturbation survives the boundary.
const char* kFig1Machine = R"(# Coffee machine, the non-robust original.
# The coin does not reset y, so serving can start with no time left.
automaton Machine1
  clock y
  input choice coin
  output cof abort
  location Ready [initial]
  location Selected [invariant: y <= 6]
  location Serving [invariant: y <= 6]
  edge Ready -> Selected choice? [reset: y]
  edge Selected -> Serving coin? [guard: y <= 6]
  edge Selected -> Ready abort! [guard: y >= 5 && y <= 6]
  edge Serving -> Ready cof! [guard: y <= 6]
end
)";

// Same machine with the fix: the coin resets y, so the serving window is
// always the full six time units.
const char* kFixedMachine = R"(# Coffee machine, fixed: coin resets y.
automaton MachineFixed
  clock y
  input choice coin
  output cof abort
  location Ready [initial]
  location Selected [invariant: y <= 6]
  location Serving [invariant: y <= 6]
  edge Ready -> Selected choice? [reset: y]
  edge Selected -> Serving coin? [guard: y <= 6] [reset: y]
  edge Selected -> Ready abort! [guard: y >= 5 && y <= 6]
  edge Serving -> Ready cof! [guard: y <= 6]
end
)";

// An implementation of the fixed machine: outputs fire at fixed instants.
const char* kImplCoffee = R"(# Implementation of the fixed machine.
automaton ImplCoffee
  clock y
  input choice coin
  output cof abort
  location Ready [initial]
  location Selected [invariant: y <= 5]
  location Serving [invariant: y <= 3]
  edge Ready -> Selected choice? [reset: y]
  edge Selected -> Serving coin? [guard: y <= 5] [reset: y]
  edge Selected -> Ready abort! [guard: y == 5]
  edge Serving -> Ready cof! [guard: y == 3]
end
)";

// University: machine, researcher, administration.
// Timing constants are our choices; the figures in the sources do not pin
// them down. The machine brews tea on its own every 8..10 time units unless
// a coin arrives; the researcher jams when tea arrives more than 15 time
// units after the last coffee; the administration stamps publications.
const char* kUniversity = R"(# University example: machine (M), researcher (R), administration (A).
automaton M
  clock w y
  input coin
  output cof tea
  location Idle [invariant: w <= 10] [initial]
  location Serving [invariant: y <= 6]
  edge Idle -> Idle tea! [guard: w >= 8] [reset: w]
  edge Idle -> Serving coin? [reset: y, w]
  edge Serving -> Idle cof! [guard: y >= 4 && y <= 6] [reset: w]
end

automaton R
  clock r x
  input cof tea
  output pub
  location Idle [initial]
  location Coffee [invariant: r <= 4]
  location Tea [invariant: r <= 8]
  location Jammed [und]
  edge Idle -> Coffee cof? [reset: r, x]
  edge Idle -> Tea tea? [guard: x <= 15] [reset: r]
  edge Idle -> Jammed tea? [guard: x > 15]
  edge Coffee -> Idle pub! [guard: r >= 2 && r <= 4]
  edge Tea -> Idle pub! [guard: r >= 4 && r <= 8]
end

automaton A
  clock z
  input pub
  output patent
  location Idle [initial]
  location Proc [invariant: z <= 2]
  edge Idle -> Proc pub? [reset: z]
  edge Proc -> Idle patent! [guard: z >= 1 && z <= 2]
end

system MA = M || A
system RA = R || A
system MR = M || R
system MRA = M || R || A
)";

// Scheduler node used by the implementation-pair checks.
const char* kImplNode = R"(# Implementation of a scheduler node: forwards at x = 12.
automaton ImplNode
  clock x
  input start_in
  output start_out
  location Idle [initial]
  location Busy [invariant: x <= 12]
  edge Idle -> Busy start_in? [reset: x]
  edge Busy -> Idle start_out! [guard: x == 12] [reset: x]
end
)";

std::vector<BundledModel> make_registry() {
    std::vector<BundledModel> out;
    out.push_back({"machine", kFig1Machine});
    out.push_back({"machine_fixed", kFixedMachine});
    out.push_back({"impl_coffee", kImplCoffee});
    out.push_back({"university", kUniversity});
    out.push_back({"impl_node", kImplNode});
    out.push_back({"milner1", milner_model_text(1)});
    out.push_back({"milner2", milner_model_text(2)});
    out.push_back({"milner3", milner_model_text(3)});
    out.push_back({"milner4", milner_model_text(4)});
    return out;
}

}  // namespace

const std::vector<BundledModel>& bundled_models() {
    static const std::vector<BundledModel> registry = make_registry();
    return registry;
}

const std::string& bundled_model_text(const std::string& name) {
    for (const auto& m : bundled_models())
        if (m.name == name) return m.text;
    throw ModelError("no bundled model named '" + name + "'");
}

ModelFile load_bundled(const std::string& name) {
    return parse_model_text(bundled_model_text(name));
}

std::string milner_model_text(int nodes) {
    if (nodes < 1) throw ModelError("node count must be positive");
    std::ostringstream oss;
    oss << "# Scheduler ring with " << nodes << " node" << (nodes > 1 ? "s" : "")
        << ": each node forwards the token 5..20 time units\n"
        << "# after receiving it. Node 0 starts with the token.\n";
    if (nodes == 1) {
        oss << "automaton Node0\n"
            << "  clock x\n"
            << "  input start_in\n"
            << "  output start_out\n"
            << "  location Idle [initial]\n"
            << "  location Busy [invariant: x <= 20]\n"
            << "  edge Idle -> Busy start_in? [reset: x]\n"
            << "  edge Busy -> Idle start_out! [guard: x >= 5 && x <= 20] [reset: x]\n"
            << "end\n";
        return oss.str();
    }
    for (int i = 0; i < nodes; ++i) {
        int next = (i + 1) % nodes;
        oss << "\nautomaton Node" << i << "\n"
            << "  clock x" << i << "\n"
            << "  input start" << i << "\n"
            << "  output start" << next << "\n";
        if (i == 0) {
            oss << "  location Idle\n"
                << "  location Busy [invariant: x0 <= 20] [initial]\n";
        } else {
            oss << "  location Idle [initial]\n"
                << "  location Busy [invariant: x" << i << " <= 20]\n";
        }
        oss << "  edge Idle -> Busy start" << i << "? [reset: x" << i << "]\n"
            << "  edge Busy -> Idle start" << next << "! [guard: x" << i << " >= 5 && x" << i
            << " <= 20] [reset: x" << i << "]\n"
            << "end\n";
    }
    oss << "\nsystem Ring =";
    for (int i = 0; i < nodes; ++i) oss << (i ? " ||" : "") << " Node" << i;
    oss << "\n";
    return oss.str();
}

}  // namespace robusta

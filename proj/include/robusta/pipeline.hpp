// ============================================================================
// pipeline.hpp — Analysis pipelines
// ============================================================================
//
// Validation → input completion → game-automaton construction (parametric
// in Δ) → per-probe instantiation, integer scaling, and game solving. The
// parametric automaton is built once per analysis so the fixed games and
// the parametric replay share edge indices.
//
// ============================================================================

#ifndef ROBUSTA_PIPELINE_HPP
#define ROBUSTA_PIPELINE_HPP

#include "robusta/search.hpp"
#include "robusta/transforms.hpp"
#include "robusta/validate.hpp"

#include <memory>
#include <string>

namespace robusta {

enum class AnalysisKind { Consistency, Usefulness };

struct AnalysisOptions {
    ZoneGraphLimits limits;
};

struct PreparedGame {
    Tioa spec;             // validated, input-completed model
    GameAutomaton base;    // consistency/usefulness game automaton (parametric)
    GameAutomaton robust;  // robust wrap of the base game (parametric)
};

/// Validate (deterministic required), complete inputs, build both game
/// automata. For compatibility, compose first and run Usefulness.
PreparedGame prepare_game(const Tioa& model, AnalysisKind kind, const AnalysisOptions& = {});

struct FixedRun {
    Rational delta;
    bool won = false;
    Rational scale = 1;
    std::shared_ptr<Tioa> game;  // scaled instantiated automaton the game ran on
    std::shared_ptr<GameResult> result;
};

/// Solve the fixed game at Δ = delta: the plain base game at 0, the robust
/// game otherwise.
FixedRun solve_fixed(const PreparedGame& pg, const Rational& delta, const AnalysisOptions& = {});

/// Replay the spoiling strategy of a lost fixed run on the parametric game.
ReplayResult replay_lost_run(const PreparedGame& pg, const FixedRun& run);

/// FixedGameOracle over a prepared game.
class PipelineOracle : public FixedGameOracle {
public:
    PipelineOracle(PreparedGame pg, AnalysisOptions opt = {})
        : pg_(std::move(pg)), opt_(opt) {}

    Outcome solve(const Rational& delta) override;
    ReplayResult replay(const Rational& delta_bad, const Outcome& lost) override;

    const PreparedGame& game() const { return pg_; }

private:
    PreparedGame pg_;
    AnalysisOptions opt_;
};

/// Convenience: full parametric search on a model.
SearchResult run_param_search(const Tioa& model, AnalysisKind kind, const SearchConfig& cfg,
                              const AnalysisOptions& = {});

}  // namespace robusta

#endif  // ROBUSTA_PIPELINE_HPP

#include "robusta/pipeline.hpp"

#include "robusta/replay.hpp"

namespace robusta {

PreparedGame prepare_game(const Tioa& model, AnalysisKind kind, const AnalysisOptions& opt) {
    (void)opt;
    ValidationReport rep = validate_spec(model);
    if (!rep.deterministic())
        throw ModelError("model '" + model.name + "' is nondeterministic:\n" +
                         rep.to_string(model));
    PreparedGame pg;
    // Universal-redirect completion: a self-loop completion would hand the
    // spoiler a commit-interrupt that keeps clocks running, which ratchets
    // any bounded-invariant location into its error region for every
    // positive perturbation.
    pg.spec = complete_inputs(model, CompletionOptions{CompletionTarget::Universal});
    if (kind == AnalysisKind::Consistency) {
        pg.base = build_consistency_game(pg.spec);
        pg.robust = build_robust_consistency_game(pg.spec);
    } else {
        pg.base = build_usefulness_game(pg.spec);
        pg.robust = build_robust_game_automaton(pg.base.automaton, pg.base.bad, Delta::param(),
                                                Polarity::Input);
    }
    return pg;
}

FixedRun solve_fixed(const PreparedGame& pg, const Rational& delta, const AnalysisOptions& opt) {
    if (delta < 0) throw ModelError("perturbation must be nonnegative");
    const GameAutomaton& ga = delta == 0 ? pg.base : pg.robust;
    Tioa inst = ga.automaton.instantiate_delta(delta);
    Rational factor = choose_scale_factor(inst, {delta});
    FixedRun run;
    run.delta = delta;
    run.scale = factor;
    run.game = std::make_shared<Tioa>(scale_constants(inst, factor));
    run.result = std::make_shared<GameResult>(
        solve_safety_game(*run.game, ga.verifier, ga.bad, opt.limits));
    run.won = run.result->verifier_wins;
    return run;
}

ReplayResult replay_lost_run(const PreparedGame& pg, const FixedRun& run) {
    if (run.won) throw InternalError("replay_lost_run on a won game");
    if (run.delta == 0)
        throw InternalError("replay needs a robust game (delta > 0)");
    Tioa param_scaled = scale_constants(pg.robust.automaton, run.scale);
    ReplayResult r = replay_spoiling_strategy(param_scaled, pg.robust.bad, *run.result, *run.game,
                                              run.delta * run.scale);
    r.delta_min /= run.scale;
    return r;
}

PipelineOracle::Outcome PipelineOracle::solve(const Rational& delta) {
    FixedRun run = solve_fixed(pg_, delta, opt_);
    Outcome out;
    out.won = run.won;
    out.states = run.result->graph.size();
    out.result = run.result;
    out.game = run.game;
    out.scale = run.scale;
    return out;
}

ReplayResult PipelineOracle::replay(const Rational& delta_bad, const Outcome& lost) {
    FixedRun run;
    run.delta = delta_bad;
    run.won = lost.won;
    run.scale = lost.scale;
    run.game = lost.game;
    run.result = lost.result;
    return replay_lost_run(pg_, run);
}

SearchResult run_param_search(const Tioa& model, AnalysisKind kind, const SearchConfig& cfg,
                              const AnalysisOptions& opt) {
    PipelineOracle oracle(prepare_game(model, kind, opt), opt);
    return evaluate_max_delta(oracle, cfg);
}

}  // namespace robusta

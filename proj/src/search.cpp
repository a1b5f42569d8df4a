#include "robusta/search.hpp"

#include <chrono>

namespace robusta {

std::string method_name(SearchMethod m) {
    return m == SearchMethod::BinarySearch ? "bs" : "cr";
}

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

}  // namespace

SearchResult evaluate_max_delta(FixedGameOracle& oracle, const SearchConfig& cfg) {
    if (cfg.delta_max <= 0) throw ModelError("delta_max must be positive");
    if (cfg.epsilon <= 0 || cfg.epsilon >= cfg.delta_max)
        throw ModelError("epsilon must satisfy 0 < epsilon < delta_max");

    SearchResult res;
    res.status = "ok";
    res.delta_good = 0;
    res.delta_bad = cfg.delta_max;

    auto record = [&](const Rational& delta, const FixedGameOracle::Outcome& out, bool preflight,
                      double ms) -> IterationRow& {
        IterationRow row;
        row.preflight = preflight;
        row.method = cfg.method;
        row.delta = delta;
        row.won = out.won;
        row.states = out.states;
        row.wall_ms = ms;
        if (!preflight) {
            row.index = ++res.games_solved;
            if (out.won) ++res.won_games;
        }
        row.delta_good = res.delta_good;
        row.delta_bad = res.delta_bad;
        res.iterations.push_back(row);
        return res.iterations.back();
    };

    // Δ = 0 must be won (the plain game).
    {
        Stopwatch sw;
        auto out = oracle.solve(Rational(0));
        record(Rational(0), out, true, sw.ms());
        if (!out.won) {
            res.status = "not_robust_at_zero";
            res.delta_good = 0;
            res.delta_bad = 0;
            return res;
        }
    }

    // Binary search needs the Δ_max game as a precondition check up front;
    // counter-strategy refinement plays Δ_bad = Δ_max as its first step and
    // reuses that game.
    std::optional<std::pair<Rational, FixedGameOracle::Outcome>> cached;
    if (cfg.method == SearchMethod::BinarySearch) {
        Stopwatch sw;
        auto out = oracle.solve(cfg.delta_max);
        record(cfg.delta_max, out, true, sw.ms());
        if (out.won) {
            res.status = "max_value_won";
            res.delta_good = cfg.delta_max;
            res.delta_bad = cfg.delta_max;
            return res;
        }
    }

    const int max_iterations = 10000;
    int guard = 0;
    while (res.delta_bad - res.delta_good > cfg.epsilon) {
        if (++guard > max_iterations)
            throw InternalError("refinement loop did not terminate");
        if (cfg.method == SearchMethod::BinarySearch) {
            Rational mid = (res.delta_good + res.delta_bad) / 2;
            Stopwatch sw;
            auto out = oracle.solve(mid);
            double ms = sw.ms();
            if (out.won)
                res.delta_good = mid;
            else
                res.delta_bad = mid;
            record(mid, out, false, ms);
        } else {
            Rational probe = res.delta_bad;
            Stopwatch sw;
            FixedGameOracle::Outcome out;
            if (cached && cached->first == probe) {
                out = cached->second;
                cached.reset();
            } else {
                out = oracle.solve(probe);
            }
            double ms = sw.ms();
            if (out.won) {
                res.delta_good = probe;
                res.delta_bad = probe;
                record(probe, out, false, ms);
                if (probe == cfg.delta_max) res.status = "max_value_won";
                break;
            }
            ReplayResult rep = oracle.replay(probe, out);
            if (rep.delta_min > probe)
                throw InternalError("replay returned a bound above the lost game's delta");
            IterationRow& row = record(probe, out, false, ms);
            row.refined_delta_min = rep.delta_min;
            row.refined_attained = rep.attained;
            if (!rep.attained && res.delta_bad - rep.delta_min > cfg.epsilon &&
                rep.delta_min > res.delta_good) {
                // strict infimum well inside the interval: probe it directly
                res.delta_bad = rep.delta_min;
            } else {
                Rational next = rep.delta_min - cfg.epsilon;
                res.delta_bad = next > res.delta_good ? next : res.delta_good;
            }
            row.delta_good = res.delta_good;
            row.delta_bad = res.delta_bad;
        }
    }
    // Counter-strategy refinement plays only losing games until the closing
    // one; when the interval collapsed without a winning probe, confirm
    // Δ_good explicitly.
    if (cfg.method == SearchMethod::CounterStrategy && res.status == "ok" &&
        res.won_games == 0) {
        Stopwatch sw;
        auto confirm = oracle.solve(res.delta_good);
        double ms = sw.ms();
        res.delta_bad = res.delta_good;
        record(res.delta_good, confirm, false, ms);
        if (!confirm.won)
            throw InternalError("interval invariant broken: the delta_good game is lost");
    }
    return res;
}

}  // namespace robusta

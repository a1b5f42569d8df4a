// ============================================================================
// search.hpp — Greatest admissible perturbation: the refinement loop
// ============================================================================
//
// Maintains the invariant interval [Δ_good, Δ_bad] and shrinks it with a
// pluggable RefineValues step: binary search plays the midpoint; counter
// strategy refinement plays Δ_bad, extracts a spoiling strategy when lost,
// replays it parametrically and jumps below the infimum of its spoiling
// range. The oracle interface keeps the loop testable against synthetic
// games.
//
// ============================================================================

#ifndef ROBUSTA_SEARCH_HPP
#define ROBUSTA_SEARCH_HPP

#include "robusta/game.hpp"
#include "robusta/replay.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace robusta {

enum class SearchMethod { BinarySearch, CounterStrategy };

std::string method_name(SearchMethod m);

struct SearchConfig {
    Rational delta_max;
    Rational epsilon;
    SearchMethod method = SearchMethod::CounterStrategy;
};

struct IterationRow {
    int index = 0;  // 1-based over refinement games, 0 for preflight checks
    bool preflight = false;
    SearchMethod method = SearchMethod::BinarySearch;
    Rational delta;
    bool won = false;
    Rational delta_good;  // interval after this iteration
    Rational delta_bad;
    std::optional<Rational> refined_delta_min;  // counter-strategy replays only
    bool refined_attained = false;
    int states = 0;
    double wall_ms = 0.0;
};

struct SearchResult {
    std::string status;  // ok | not_robust_at_zero | max_value_won
    Rational delta_good;
    Rational delta_bad;
    std::vector<IterationRow> iterations;
    int games_solved = 0;  // refinement games (preflight checks excluded)
    int won_games = 0;     // won refinement games

    bool not_robust_at_zero() const { return status == "not_robust_at_zero"; }
    bool max_value_won() const { return status == "max_value_won"; }
};

/// One fixed-Δ game behind an abstract interface so the loop can be driven
/// by real games or synthetic test oracles.
class FixedGameOracle {
public:
    struct Outcome {
        bool won = false;
        int states = 0;
        std::shared_ptr<GameResult> result;  // unset for synthetic oracles
        std::shared_ptr<Tioa> game;
        Rational scale = 1;
    };
    virtual ~FixedGameOracle() = default;
    virtual Outcome solve(const Rational& delta) = 0;
    /// Infimum of the Δ-range in which the spoiling strategy of `lost`
    /// (solved at delta_bad) still spoils. Units: unscaled Δ.
    virtual ReplayResult replay(const Rational& delta_bad, const Outcome& lost) = 0;
};

/// Algorithm-1 loop. Preconditions are checked: the Δ=0 game must be won
/// (else status not_robust_at_zero) and the Δ_max game lost (else status
/// max_value_won with Δ_good = Δ_max).
SearchResult evaluate_max_delta(FixedGameOracle& oracle, const SearchConfig& cfg);

}  // namespace robusta

#endif  // ROBUSTA_SEARCH_HPP

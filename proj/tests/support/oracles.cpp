#include "oracles.hpp"

#include <algorithm>

namespace robusta::test {

int Rng::uniform(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(engine);
}

Rational Rng::rational(int max_value, int max_denominator) {
    static const int dens[] = {1, 2, 4, 8};
    int den = dens[static_cast<std::size_t>(uniform(0, 3))];
    if (den > max_denominator) den = max_denominator;
    int num = uniform(0, max_value * den);
    return Rational(num, den);
}

Dbm random_dbm(Rng& rng, int clocks, int max_const) {
    Dbm z = Dbm::universe(clocks + 1);
    int constraints = rng.uniform(1, 2 * clocks + 1);
    for (int c = 0; c < constraints; ++c) {
        int i = rng.uniform(0, clocks);
        int j = rng.uniform(0, clocks);
        if (i == j) continue;
        std::int64_t k = rng.uniform(j == 0 ? 0 : -max_const, max_const);
        bool strict = rng.uniform(0, 1) == 1;
        z = z.constrained(i, j, Bound{k, strict});
        if (z.is_empty()) break;
    }
    return z;
}

Federation random_federation(Rng& rng, int clocks, int max_const) {
    Federation f(clocks + 1);
    int members = rng.uniform(1, 3);
    for (int i = 0; i < members; ++i) f.add(random_dbm(rng, clocks, max_const));
    return f;
}

Valuation random_valuation(Rng& rng, int clocks, int max_value) {
    Valuation v(static_cast<std::size_t>(clocks) + 1, Rational(0));
    for (int i = 1; i <= clocks; ++i) v[static_cast<std::size_t>(i)] = rng.rational(max_value, 8);
    return v;
}

// ── Delay sets ──────────────────────────────────────────────────────────────

std::vector<DelaySlice> delay_set(const Federation& z, const Valuation& u) {
    std::vector<DelaySlice> out;
    for (const auto& m : z.members()) {
        DelaySlice s;
        bool hi_unbounded = false;
        if (m.delay_interval(u, s.lo, s.lo_strict, s.hi, s.hi_strict, hi_unbounded)) {
            s.unbounded = hi_unbounded;
            out.push_back(s);
        }
    }
    return out;
}

namespace {

/// All d ≥ 0 with u − d ∈ member and u − d ≥ 0, per member of z.
std::vector<DelaySlice> past_delay_set(const Federation& z, const Valuation& u) {
    std::vector<DelaySlice> out;
    for (const auto& m : z.members()) {
        DelaySlice s{Rational(0), false, Rational(0), false, true};
        bool feasible = true;
        for (int i = 0; i < m.dim() && feasible; ++i)
            for (int j = 0; j < m.dim() && feasible; ++j) {
                if (i == j) continue;
                Bound b = m.at(i, j);
                if (b.is_infinity()) continue;
                Rational vi = i == 0 ? Rational(0) : u[static_cast<std::size_t>(i)];
                Rational vj = j == 0 ? Rational(0) : u[static_cast<std::size_t>(j)];
                if (i != 0 && j != 0) {
                    Rational diff = vi - vj;
                    if (!(b.strict ? diff < b.value : diff <= b.value)) feasible = false;
                } else if (j == 0) {
                    // (v_i − d) ≤ b  ⇒  d ≥ v_i − b
                    Rational lb = vi - Rational(b.value);
                    if (lb > s.lo || (lb == s.lo && b.strict && !s.lo_strict)) {
                        s.lo = lb;
                        s.lo_strict = b.strict;
                    }
                } else {
                    // −(v_j − d) ≤ b  ⇒  d ≤ b + v_j
                    Rational ub = Rational(b.value) + vj;
                    if (s.unbounded || ub < s.hi || (ub == s.hi && b.strict && !s.hi_strict)) {
                        s.hi = ub;
                        s.hi_strict = b.strict;
                        s.unbounded = false;
                    }
                }
            }
        if (!feasible) continue;
        for (int i = 1; i < m.dim(); ++i) {
            // past point stays in the orthant
            Rational cap = u[static_cast<std::size_t>(i)];
            if (s.unbounded || cap < s.hi) {
                s.hi = cap;
                s.hi_strict = false;
                s.unbounded = false;
            }
        }
        if (s.lo < 0) {
            s.lo = 0;
            s.lo_strict = false;
        }
        if (!s.unbounded) {
            if (s.hi < s.lo) continue;
            if (s.hi == s.lo && (s.lo_strict || s.hi_strict)) continue;
        }
        out.push_back(s);
    }
    return out;
}

struct Threshold {
    bool exists = false;    // is the set reachable at all
    Rational value;         // infimum of its delay set
    bool attained = false;  // the infimum itself is in the set
};

Threshold threshold_of(const std::vector<DelaySlice>& slices) {
    Threshold t;
    for (const auto& s : slices) {
        bool attained = !s.lo_strict;
        if (!t.exists || s.lo < t.value || (s.lo == t.value && attained && !t.attained)) {
            t.exists = true;
            t.value = s.lo;
            t.attained = attained;
        }
    }
    return t;
}

/// ∃d in some slice with d below the threshold ([0,d] misses the other set).
bool reachable_below(const std::vector<DelaySlice>& slices, const Threshold& t) {
    for (const auto& s : slices) {
        if (!t.exists) return true;
        if (s.lo < t.value) return true;
        if (s.lo == t.value && !t.attained && !s.lo_strict) return true;
    }
    return false;
}

}  // namespace

bool oracle_in_down(const Federation& z, const Valuation& u) { return !delay_set(z, u).empty(); }

bool oracle_in_up(const Federation& z, const Valuation& u) {
    return !past_delay_set(z, u).empty();
}

bool oracle_in_pred_t(const Federation& x, const Federation& y, const Valuation& u) {
    return reachable_below(delay_set(x, u), threshold_of(delay_set(y, u)));
}

bool oracle_in_succ_t(const Federation& x, const Federation& avoid, const Valuation& u) {
    return reachable_below(past_delay_set(x, u), threshold_of(past_delay_set(avoid, u)));
}

namespace {

/// Exact feasibility of a member zone with some coordinates pinned.
bool member_feasible_with_pins(const Dbm& m, const std::vector<std::optional<Rational>>& pin) {
    std::vector<Rational> vals;
    for (const auto& p : pin)
        if (p) vals.push_back(*p);
    BigInt l = lcm_denominators(vals);
    std::int64_t f = static_cast<std::int64_t>(l);

    Dbm scaled = Dbm::universe(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) {
            if (i == j) continue;
            Bound b = m.at(i, j);
            if (b.is_infinity()) continue;
            scaled = scaled.constrained(i, j, Bound{b.value * f, b.strict});
        }
    for (int i = 1; i < m.dim(); ++i) {
        if (!pin[static_cast<std::size_t>(i)]) continue;
        Rational scaled_val = *pin[static_cast<std::size_t>(i)] * Rational(f);
        std::int64_t v = to_int64(scaled_val);
        scaled = scaled.constrained(i, 0, Bound::le(v));
        scaled = scaled.constrained(0, i, Bound::le(-v));
        if (scaled.is_empty()) return false;
    }
    return !scaled.is_empty();
}

}  // namespace

bool oracle_in_free(const Federation& z, const std::vector<ClockId>& resets, const Valuation& u) {
    for (const auto& m : z.members()) {
        std::vector<std::optional<Rational>> pin(static_cast<std::size_t>(m.dim()));
        for (int i = 1; i < m.dim(); ++i) {
            bool freed = std::find(resets.begin(), resets.end(), i) != resets.end();
            if (!freed) pin[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)];
        }
        if (member_feasible_with_pins(m, pin)) return true;
    }
    return false;
}

bool oracle_in_reset(const Federation& z, const std::vector<ClockId>& resets, const Valuation& u) {
    for (ClockId c : resets)
        if (u[static_cast<std::size_t>(c)] != 0) return false;
    return oracle_in_free(z, resets, u);
}

bool discretized_pred_t(const Federation& x, const Federation& y, const Valuation& u,
                        const Rational& step, const Rational& horizon) {
    for (Rational d = 0; d <= horizon; d += step) {
        Valuation v = u;
        for (std::size_t i = 1; i < v.size(); ++i) v[i] += d;
        if (!x.contains(v)) continue;
        bool safe = true;
        for (Rational d2 = 0; d2 <= d; d2 += step) {
            Valuation w = u;
            for (std::size_t i = 1; i < w.size(); ++i) w[i] += d2;
            if (y.contains(w)) {
                safe = false;
                break;
            }
        }
        if (safe) return true;
    }
    return false;
}

}  // namespace robusta::test

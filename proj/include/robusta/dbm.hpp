// ============================================================================
// dbm.hpp — Difference bound matrices over integer constants
// ============================================================================
//
// Entry (i,j) bounds x_i − x_j; row/column 0 is the reference clock. A Dbm
// is kept canonical (shortest-path closed) by every operation; emptiness is
// a stored flag after closure. Guard bounds must have been scaled to
// integers before they reach this layer.
//
// ============================================================================

#ifndef ROBUSTA_DBM_HPP
#define ROBUSTA_DBM_HPP

#include "robusta/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace robusta {

// ── Bound ───────────────────────────────────────────────────────────────────

struct Bound {
    std::int64_t value = 0;
    bool strict = false;

    static Bound infinity();
    static Bound le(std::int64_t v) { return Bound{v, false}; }
    static Bound lt(std::int64_t v) { return Bound{v, true}; }
    static Bound le_zero() { return Bound{0, false}; }

    bool is_infinity() const;

    bool operator==(const Bound&) const = default;
    bool operator<(const Bound& o) const;
    bool operator<=(const Bound& o) const { return !(o < *this); }

    Bound operator+(const Bound& o) const;

    /// Complement of the half-plane x_i − x_j ≺ b is x_j − x_i ≺' −b with
    /// flipped strictness.
    Bound negated_complement() const;

    std::string to_string() const;
};

// ── Dbm ─────────────────────────────────────────────────────────────────────

class Dbm {
public:
    /// All clocks unconstrained except x ≥ 0.
    static Dbm universe(int dim);
    /// All clocks equal to zero.
    static Dbm zero(int dim);
    static Dbm empty(int dim);

    int dim() const { return dim_; }
    bool is_empty() const { return empty_; }

    Bound at(int i, int j) const { return m_[idx(i, j)]; }

    /// Tighten entry (i,j) to min(current, b) and re-close.
    Dbm constrained(int i, int j, Bound b) const;

    /// Conjoin an instantiated (integer-bound) guard.
    Dbm and_guard(const Guard& g) const;

    /// Timed successors: erase upper bounds against the reference clock.
    Dbm up() const;

    /// Timed predecessors intersected with the nonnegative orthant.
    Dbm down() const;

    /// Set the listed clocks to zero.
    Dbm reset(const std::vector<ClockId>& clocks) const;

    /// Remove all constraints on the listed clocks (keep x ≥ 0).
    Dbm free(const std::vector<ClockId>& clocks) const;

    Dbm intersect(const Dbm& o) const;

    /// Classical per-clock maximal-constant extrapolation, then re-close.
    Dbm extrapolate(const std::vector<std::int64_t>& max_consts) const;

    bool includes(const Dbm& o) const;
    bool intersects(const Dbm& o) const;
    bool operator==(const Dbm& o) const;

    /// Exact membership of a rational point (index 1..dim-1; entry 0 ignored).
    bool contains(const std::vector<Rational>& valuation) const;

    /// Some rational point inside a non-empty zone.
    std::vector<Rational> sample_point() const;

    /// Delays d ≥ 0 with valuation+d inside this zone, as an exact interval.
    /// Returns false if no such delay exists; otherwise lo/hi (hi may be
    /// infinite) with strictness flags.
    bool delay_interval(const std::vector<Rational>& valuation, Rational& lo, bool& lo_strict,
                        Rational& hi, bool& hi_strict, bool& hi_unbounded) const;

    std::string to_string(const std::vector<std::string>& clock_names = {}) const;

    /// Canonical key for hashing / deduplication (empty string if empty zone).
    std::string key() const;

private:
    Dbm(int dim, bool empty);
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * dim_ + j; }
    void set(int i, int j, Bound b) { m_[idx(i, j)] = b; }
    void close();

    int dim_ = 1;
    bool empty_ = false;
    std::vector<Bound> m_;
};

}  // namespace robusta

#endif  // ROBUSTA_DBM_HPP

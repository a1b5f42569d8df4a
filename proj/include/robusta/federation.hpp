// ============================================================================
// federation.hpp — Finite unions of zones
// ============================================================================
//
// Needed wherever complements show up: guard negation in the robust game
// construction and the set differences of the game fixpoint. Member zones
// are canonical and non-empty; members may overlap (reduce() drops members
// included in another, opportunistically).
//
// ============================================================================

#ifndef ROBUSTA_FEDERATION_HPP
#define ROBUSTA_FEDERATION_HPP

#include "robusta/dbm.hpp"

#include <string>
#include <vector>

namespace robusta {

class Federation {
public:
    Federation() = default;
    explicit Federation(int dim) : dim_(dim) {}
    explicit Federation(const Dbm& z);

    static Federation empty(int dim) { return Federation(dim); }
    static Federation universe(int dim) { return Federation(Dbm::universe(dim)); }

    int dim() const { return dim_; }
    bool is_empty() const { return members_.empty(); }
    int size() const { return static_cast<int>(members_.size()); }
    const std::vector<Dbm>& members() const { return members_; }

    void add(const Dbm& z);

    Federation unite(const Federation& o) const;
    Federation intersect(const Federation& o) const;
    Federation intersect(const Dbm& z) const;
    Federation subtract(const Federation& o) const;
    Federation subtract(const Dbm& z) const;

    Federation up() const;
    Federation down() const;
    Federation reset(const std::vector<ClockId>& clocks) const;
    Federation free(const std::vector<ClockId>& clocks) const;
    Federation and_guard(const Guard& g) const;

    /// Exact set inclusion: o \ this == empty.
    bool includes(const Federation& o) const;
    bool same_set(const Federation& o) const { return includes(o) && o.includes(*this); }

    bool contains(const std::vector<Rational>& valuation) const;

    /// Drop members included in another member.
    Federation reduce() const;

    std::string to_string(const std::vector<std::string>& clock_names = {}) const;

private:
    int dim_ = 1;
    std::vector<Dbm> members_;
};

/// Subtraction of a single convex zone from a single convex zone,
/// as a list of disjoint convex pieces.
std::vector<Dbm> dbm_subtract(const Dbm& a, const Dbm& b);

/// Safe timed predecessors: points that can delay into `good` while avoiding
/// `bad` for the whole delay. Exact on federations.
Federation pred_t(const Federation& good, const Federation& bad);

/// Time-reversed dual: points reachable from `start` by delaying without
/// ever touching `avoid` (the reached point itself included in the check).
Federation succ_t(const Federation& start, const Federation& avoid);

/// Lift an instantiated guard to a zone over `dim` clocks (+reference).
Dbm guard_to_dbm(const Guard& g, int dim);

/// Render a zone back as a guard (implicit x ≥ 0 rows skipped; the empty
/// zone becomes the canonical unsatisfiable atom 0 < 0).
Guard dbm_to_guard(const Dbm& z);

/// Complement of an instantiated guard as disjoint convex guards.
/// Empty input guard (true) yields an empty list.
std::vector<Guard> complement_guard(const Guard& g);

}  // namespace robusta

#endif  // ROBUSTA_FEDERATION_HPP

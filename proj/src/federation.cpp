#include "robusta/federation.hpp"

#include <sstream>

namespace robusta {

Federation::Federation(const Dbm& z) : dim_(z.dim()) {
    if (!z.is_empty()) members_.push_back(z);
}

void Federation::add(const Dbm& z) {
    if (z.is_empty()) return;
    for (const auto& m : members_)
        if (m.includes(z)) return;
    members_.push_back(z);
}

Federation Federation::unite(const Federation& o) const {
    Federation out = *this;
    for (const auto& z : o.members_) out.add(z);
    return out;
}

Federation Federation::intersect(const Dbm& z) const {
    Federation out(dim_);
    for (const auto& m : members_) out.add(m.intersect(z));
    return out;
}

Federation Federation::intersect(const Federation& o) const {
    Federation out(dim_);
    for (const auto& a : members_)
        for (const auto& b : o.members_) out.add(a.intersect(b));
    return out;
}

std::vector<Dbm> dbm_subtract(const Dbm& a, const Dbm& b) {
    std::vector<Dbm> out;
    if (a.is_empty()) return out;
    if (b.is_empty()) {
        out.push_back(a);
        return out;
    }
    Dbm rest = a;
    int dim = a.dim();
    for (int i = 0; i < dim && !rest.is_empty(); ++i)
        for (int j = 0; j < dim && !rest.is_empty(); ++j) {
            if (i == j) continue;
            Bound bij = b.at(i, j);
            if (bij.is_infinity()) continue;
            // skip facets that cannot cut the remainder
            if (bij < rest.at(i, j)) {
                Dbm piece = rest.constrained(j, i, bij.negated_complement());
                if (!piece.is_empty()) out.push_back(piece);
                rest = rest.constrained(i, j, bij);
            }
        }
    return out;
}

Federation Federation::subtract(const Dbm& z) const {
    Federation out(dim_);
    for (const auto& m : members_)
        for (const auto& piece : dbm_subtract(m, z)) out.add(piece);
    return out;
}

Federation Federation::subtract(const Federation& o) const {
    Federation out = *this;
    for (const auto& z : o.members_) {
        out = out.subtract(z);
        if (out.is_empty()) break;
    }
    return out;
}

Federation Federation::up() const {
    Federation out(dim_);
    for (const auto& m : members_) out.add(m.up());
    return out;
}

Federation Federation::down() const {
    Federation out(dim_);
    for (const auto& m : members_) out.add(m.down());
    return out;
}

Federation Federation::reset(const std::vector<ClockId>& clocks) const {
    Federation out(dim_);
    for (const auto& m : members_) out.add(m.reset(clocks));
    return out;
}

Federation Federation::free(const std::vector<ClockId>& clocks) const {
    Federation out(dim_);
    for (const auto& m : members_) out.add(m.free(clocks));
    return out;
}

Federation Federation::and_guard(const Guard& g) const {
    Federation out(dim_);
    for (const auto& m : members_) out.add(m.and_guard(g));
    return out;
}

bool Federation::includes(const Federation& o) const {
    for (const auto& z : o.members_) {
        Federation probe(z);
        if (!probe.subtract(*this).is_empty()) return false;
    }
    return true;
}

bool Federation::contains(const std::vector<Rational>& valuation) const {
    for (const auto& m : members_)
        if (m.contains(valuation)) return true;
    return false;
}

Federation Federation::reduce() const {
    Federation out(dim_);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        bool covered = false;
        for (std::size_t j = 0; j < members_.size(); ++j) {
            if (i == j) continue;
            if (members_[j].includes(members_[i]) && (j < i || !members_[i].includes(members_[j]))) {
                covered = true;
                break;
            }
        }
        if (!covered) out.members_.push_back(members_[i]);
    }
    return out;
}

std::string Federation::to_string(const std::vector<std::string>& clock_names) const {
    if (members_.empty()) return "false";
    std::ostringstream oss;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) oss << " || ";
        oss << "(" << members_[i].to_string(clock_names) << ")";
    }
    return oss.str();
}

// ── pred_t / succ_t ─────────────────────────────────────────────────────────
//
// Convex case: predt(G,B) = (down(G) \ down(B)) ∪ down((G ∩ down(B)) \ B).
// For a union of bad zones, intersect the per-bad results; for a union of
// good zones, take the union (valid because each good zone is convex).

namespace {

Federation predt_convex(const Dbm& good, const Federation& bad) {
    Dbm down_good = good.down();
    if (bad.is_empty()) return Federation(down_good);
    Federation acc(down_good);
    for (const auto& b : bad.members()) {
        if (!down_good.intersects(b.down())) continue;
        Dbm down_bad = b.down();
        Federation part = Federation(down_good).subtract(down_bad);
        Federation reentry = Federation(good.intersect(down_bad)).subtract(b).down();
        part = part.unite(reentry);
        acc = acc.intersect(part);
        if (acc.is_empty()) break;
    }
    return acc;
}

Federation succt_convex(const Dbm& start, const Federation& avoid) {
    Dbm up_start = start.up();
    if (avoid.is_empty()) return Federation(up_start);
    Federation acc(up_start);
    for (const auto& b : avoid.members()) {
        if (!up_start.intersects(b.up())) continue;
        Dbm up_bad = b.up();
        Federation part = Federation(up_start).subtract(up_bad);
        Federation reentry = Federation(start.intersect(up_bad)).subtract(b).up();
        part = part.unite(reentry);
        acc = acc.intersect(part);
        if (acc.is_empty()) break;
    }
    return acc;
}

}  // namespace

Federation pred_t(const Federation& good, const Federation& bad) {
    Federation out(good.dim());
    for (const auto& g : good.members()) out = out.unite(predt_convex(g, bad));
    return out.reduce();
}

Federation succ_t(const Federation& start, const Federation& avoid) {
    Federation out(start.dim());
    for (const auto& g : start.members()) out = out.unite(succt_convex(g, avoid));
    return out.reduce();
}

// ── Guards ↔ zones ──────────────────────────────────────────────────────────

Dbm guard_to_dbm(const Guard& g, int dim) {
    return Dbm::universe(dim).and_guard(g);
}

Guard dbm_to_guard(const Dbm& z) {
    Guard g;
    if (z.is_empty()) {
        AtomicConstraint never;
        never.rel = Rel::Lt;
        never.bound = LinExpr(Rational(0));
        g.atoms.push_back(never);
        return g;
    }
    for (int i = 0; i < z.dim(); ++i)
        for (int j = 0; j < z.dim(); ++j) {
            if (i == j) continue;
            Bound b = z.at(i, j);
            if (b.is_infinity()) continue;
            if (i == 0 && b == Bound::le_zero()) continue;  // x >= 0 implicit
            AtomicConstraint a;
            if (i == 0) {
                a.left = j;
                a.rel = b.strict ? Rel::Gt : Rel::Ge;
                a.bound = LinExpr(Rational(-b.value));
            } else {
                a.left = i;
                a.right = j;
                a.rel = b.strict ? Rel::Lt : Rel::Le;
                a.bound = LinExpr(Rational(b.value));
            }
            g.atoms.push_back(a);
        }
    return g;
}

std::vector<Guard> complement_guard(const Guard& g) {
    std::vector<Guard> out;
    if (!g.delta_atoms.empty())
        throw InternalError("complement_guard on a guard with delta atoms");
    // ¬(a1 ∧ … ∧ an) = ⋃_i (a1 ∧ … ∧ a_{i−1} ∧ ¬a_i), disjoint convex pieces.
    for (std::size_t i = 0; i < g.atoms.size(); ++i) {
        Guard piece;
        for (std::size_t j = 0; j < i; ++j) piece.atoms.push_back(g.atoms[j]);
        AtomicConstraint neg = g.atoms[i];
        switch (neg.rel) {
            case Rel::Lt: neg.rel = Rel::Ge; break;
            case Rel::Le: neg.rel = Rel::Gt; break;
            case Rel::Gt: neg.rel = Rel::Le; break;
            case Rel::Ge: neg.rel = Rel::Lt; break;
        }
        piece.atoms.push_back(neg);
        out.push_back(piece);
    }
    return out;
}

}  // namespace robusta

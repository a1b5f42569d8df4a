#include "robusta/param_poly.hpp"

#include <algorithm>
#include <sstream>

namespace robusta {

// ── Generic row machinery ───────────────────────────────────────────────────
//
// Rows Σ c·v ≺ k over a flat variable vector. ParamPoly uses width
// clocks+1 (clocks then Δ); a transient delay variable is appended for
// elapse operations and eliminated again.

namespace {

struct ExtRow {
    std::vector<Rational> c;
    bool strict = false;
    Rational k;
};

bool row_all_zero(const ExtRow& r) {
    return std::all_of(r.c.begin(), r.c.end(), [](const Rational& x) { return x == 0; });
}

/// Scale so coefficients are integers with gcd 1 (sign preserved).
void normalize_row(ExtRow& r) {
    BigInt l = 1;
    for (const auto& x : r.c) l = boost::integer::lcm(l, BigInt(denominator(x)));
    BigInt g = 0;
    for (const auto& x : r.c) {
        BigInt n = numerator(x * Rational(l));
        g = boost::integer::gcd(g, n < 0 ? BigInt(-n) : n);
    }
    if (g == 0) return;  // constant row
    Rational scale = Rational(l, g);
    for (auto& x : r.c) x *= scale;
    r.k *= scale;
}

/// True when r1 implies r2 (same coefficient vector, tighter bound).
bool row_implies(const ExtRow& r1, const ExtRow& r2) {
    if (r1.c != r2.c) return false;
    if (r1.k < r2.k) return true;
    if (r1.k == r2.k) return r1.strict || !r2.strict;
    return false;
}

/// Returns false when a constant row is contradictory.
bool prune_rows(std::vector<ExtRow>& rows) {
    std::vector<ExtRow> out;
    for (auto& r : rows) {
        normalize_row(r);
        if (row_all_zero(r)) {
            bool ok = r.strict ? (r.k > 0) : (r.k >= 0);
            if (!ok) return false;
            continue;
        }
        bool subsumed = false;
        for (auto& o : out) {
            if (row_implies(o, r)) {
                subsumed = true;
                break;
            }
            if (row_implies(r, o)) {
                o = r;
                subsumed = true;
                break;
            }
        }
        if (!subsumed) out.push_back(std::move(r));
    }
    rows = std::move(out);
    return true;
}

/// Fourier–Motzkin elimination of one variable. Returns false when a
/// contradiction surfaces during pruning.
bool eliminate_var(std::vector<ExtRow>& rows, std::size_t var) {
    std::vector<ExtRow> zero, pos, neg;
    for (auto& r : rows) {
        if (r.c[var] == 0) zero.push_back(std::move(r));
        else if (r.c[var] > 0) pos.push_back(std::move(r));
        else neg.push_back(std::move(r));
    }
    std::vector<ExtRow> out = std::move(zero);
    for (const auto& p : pos)
        for (const auto& n : neg) {
            // p: a·v + u ≺ k1 (a>0) ; n: -b·v + w ≺ k2 (b>0)
            Rational a = p.c[var];
            Rational b = -n.c[var];
            ExtRow comb;
            comb.c.resize(p.c.size());
            for (std::size_t i = 0; i < p.c.size(); ++i)
                comb.c[i] = p.c[i] / a + n.c[i] / b;
            comb.c[var] = 0;
            comb.k = p.k / a + n.k / b;
            comb.strict = p.strict || n.strict;
            out.push_back(std::move(comb));
        }
    rows = std::move(out);
    return prune_rows(rows);
}

bool rows_empty(std::vector<ExtRow> rows, std::size_t width) {
    if (!prune_rows(rows)) return true;
    for (std::size_t v = 0; v < width; ++v) {
        if (!eliminate_var(rows, v)) return true;
        if (rows.empty()) return false;
    }
    return false;
}

ExtRow to_ext(const ParamAtom& a) {
    ExtRow r;
    r.c = a.coeffs;
    r.c.push_back(a.delta_coeff);
    r.strict = a.strict;
    r.k = a.constant;
    return r;
}

ParamAtom from_ext(const ExtRow& r) {
    ParamAtom a;
    a.coeffs.assign(r.c.begin(), r.c.end() - 1);
    a.delta_coeff = r.c.back();
    a.strict = r.strict;
    a.constant = r.k;
    return a;
}

}  // namespace

// ── ParamPoly ───────────────────────────────────────────────────────────────

ParamPoly::ParamPoly(int clocks) : clocks_(clocks) {}

ParamPoly ParamPoly::orthant(int clocks) {
    ParamPoly p(clocks);
    for (int i = 0; i < clocks; ++i) {
        ParamAtom a;
        a.coeffs.assign(static_cast<std::size_t>(clocks), Rational(0));
        a.coeffs[static_cast<std::size_t>(i)] = -1;  // -x_i <= 0
        a.constant = 0;
        p.rows_.push_back(a);
    }
    ParamAtom d;
    d.coeffs.assign(static_cast<std::size_t>(clocks), Rational(0));
    d.delta_coeff = -1;  // -Δ <= 0
    d.constant = 0;
    p.rows_.push_back(d);
    return p;
}

void ParamPoly::add_row(ParamAtom row) {
    if (row.coeffs.size() != static_cast<std::size_t>(clocks_))
        throw InternalError("param atom width mismatch");
    rows_.push_back(std::move(row));
    normalize();
}

void ParamPoly::normalize() {
    std::vector<ExtRow> rows;
    rows.reserve(rows_.size());
    for (const auto& a : rows_) rows.push_back(to_ext(a));
    if (!prune_rows(rows)) {
        // contradictory constant row: canonical empty marker 0 < 0
        rows_.clear();
        ParamAtom never;
        never.coeffs.assign(static_cast<std::size_t>(clocks_), Rational(0));
        never.strict = true;
        never.constant = 0;
        rows_.push_back(never);
        return;
    }
    rows_.clear();
    for (const auto& r : rows) rows_.push_back(from_ext(r));
}

ParamPoly ParamPoly::and_guard(const Guard& g) const {
    ParamPoly p = *this;
    for (const auto& atom : g.atoms) {
        ParamAtom row;
        row.coeffs.assign(static_cast<std::size_t>(clocks_), Rational(0));
        Rational sign = is_upper(atom.rel) ? Rational(1) : Rational(-1);
        if (atom.left != kRefClock) row.coeffs[static_cast<std::size_t>(atom.left) - 1] += sign;
        if (atom.right != kRefClock) row.coeffs[static_cast<std::size_t>(atom.right) - 1] -= sign;
        row.delta_coeff = -sign * atom.bound.delta_coeff;
        row.constant = sign * atom.bound.base;
        row.strict = is_strict(atom.rel);
        p.rows_.push_back(row);
    }
    for (const auto& da : g.delta_atoms) {
        ParamAtom row;
        row.coeffs.assign(static_cast<std::size_t>(clocks_), Rational(0));
        Rational sign = is_upper(da.rel) ? Rational(1) : Rational(-1);
        row.delta_coeff = sign;
        row.constant = sign * da.threshold;
        row.strict = is_strict(da.rel);
        p.rows_.push_back(row);
    }
    p.normalize();
    return p;
}

ParamPoly ParamPoly::intersect(const ParamPoly& o) const {
    ParamPoly p = *this;
    for (const auto& r : o.rows_) p.rows_.push_back(r);
    p.normalize();
    return p;
}

bool ParamPoly::is_empty() const {
    std::vector<ExtRow> rows;
    for (const auto& a : rows_) rows.push_back(to_ext(a));
    return rows_empty(std::move(rows), static_cast<std::size_t>(clocks_) + 1);
}

namespace {

/// Shared implementation of elapse/elapse_past: substitute x := x ∓ d·1,
/// conjoin d ≥ 0 (and extra rows), eliminate d.
std::vector<ExtRow> elapse_rows(const std::vector<ParamAtom>& atoms, int clocks, bool past) {
    const std::size_t width = static_cast<std::size_t>(clocks) + 2;  // clocks, Δ, d
    const std::size_t dvar = width - 1;
    std::vector<ExtRow> rows;
    for (const auto& a : atoms) {
        ExtRow r;
        r.c.assign(width, Rational(0));
        Rational dsum = 0;
        for (int i = 0; i < clocks; ++i) {
            r.c[static_cast<std::size_t>(i)] = a.coeffs[static_cast<std::size_t>(i)];
            dsum += a.coeffs[static_cast<std::size_t>(i)];
        }
        r.c[static_cast<std::size_t>(clocks)] = a.delta_coeff;
        r.c[dvar] = past ? dsum : -dsum;
        r.strict = a.strict;
        r.k = a.constant;
        rows.push_back(std::move(r));
    }
    {
        ExtRow dpos;  // -d <= 0
        dpos.c.assign(width, Rational(0));
        dpos.c[dvar] = -1;
        dpos.k = 0;
        rows.push_back(std::move(dpos));
    }
    if (past) {
        // past points must stay in the orthant
        for (int i = 0; i < clocks; ++i) {
            ExtRow r;
            r.c.assign(width, Rational(0));
            r.c[static_cast<std::size_t>(i)] = -1;
            r.k = 0;
            rows.push_back(std::move(r));
        }
    }
    if (!eliminate_var(rows, dvar)) {
        rows.clear();
        ExtRow never;
        never.c.assign(width, Rational(0));
        never.strict = true;
        never.k = 0;
        rows.push_back(never);
    }
    for (auto& r : rows) r.c.resize(width - 1);
    return rows;
}

}  // namespace

ParamPoly ParamPoly::elapse() const {
    ParamPoly p(clocks_);
    for (const auto& r : elapse_rows(rows_, clocks_, false)) p.rows_.push_back(from_ext(r));
    p.normalize();
    return p;
}

ParamPoly ParamPoly::elapse_past() const {
    ParamPoly p(clocks_);
    for (const auto& r : elapse_rows(rows_, clocks_, true)) p.rows_.push_back(from_ext(r));
    p.normalize();
    return p;
}

ParamPoly ParamPoly::unreset(const std::vector<ClockId>& reset) const {
    ParamPoly p(clocks_);
    for (auto row : rows_) {
        for (ClockId c : reset) row.coeffs[static_cast<std::size_t>(c) - 1] = 0;
        p.rows_.push_back(std::move(row));
    }
    for (ClockId c : reset) {
        ParamAtom nonneg;
        nonneg.coeffs.assign(static_cast<std::size_t>(clocks_), Rational(0));
        nonneg.coeffs[static_cast<std::size_t>(c) - 1] = -1;
        nonneg.constant = 0;
        p.rows_.push_back(std::move(nonneg));
    }
    p.normalize();
    return p;
}

ParamPoly ParamPoly::reset(const std::vector<ClockId>& reset) const {
    std::vector<ExtRow> rows;
    for (const auto& a : rows_) rows.push_back(to_ext(a));
    bool ok = true;
    for (ClockId c : reset)
        if (!eliminate_var(rows, static_cast<std::size_t>(c) - 1)) {
            ok = false;
            break;
        }
    ParamPoly p(clocks_);
    if (!ok) {
        ParamAtom never;
        never.coeffs.assign(static_cast<std::size_t>(clocks_), Rational(0));
        never.strict = true;
        never.constant = 0;
        p.rows_.push_back(never);
        return p;
    }
    for (const auto& r : rows) p.rows_.push_back(from_ext(r));
    for (ClockId c : reset) {
        ParamAtom up, lo;
        up.coeffs.assign(static_cast<std::size_t>(clocks_), Rational(0));
        up.coeffs[static_cast<std::size_t>(c) - 1] = 1;
        up.constant = 0;
        lo.coeffs.assign(static_cast<std::size_t>(clocks_), Rational(0));
        lo.coeffs[static_cast<std::size_t>(c) - 1] = -1;
        lo.constant = 0;
        p.rows_.push_back(up);
        p.rows_.push_back(lo);
    }
    p.normalize();
    return p;
}

ParamPoly ParamPoly::with_clocks_zero() const {
    ParamPoly p = *this;
    for (int c = 1; c <= clocks_; ++c) {
        ParamAtom up;
        up.coeffs.assign(static_cast<std::size_t>(clocks_), Rational(0));
        up.coeffs[static_cast<std::size_t>(c) - 1] = 1;
        up.constant = 0;
        p.rows_.push_back(up);
    }
    p.normalize();
    return p;
}

bool ParamPoly::contains(const std::vector<Rational>& valuation, const Rational& delta) const {
    for (const auto& r : rows_) {
        Rational lhs = r.delta_coeff * delta;
        for (int i = 0; i < clocks_; ++i)
            lhs += r.coeffs[static_cast<std::size_t>(i)] *
                   valuation.at(static_cast<std::size_t>(i) + 1);
        if (r.strict ? !(lhs < r.constant) : !(lhs <= r.constant)) return false;
    }
    return true;
}

ParamPoly ParamPoly::clamp_delta(const Rational& hi) const {
    ParamPoly p = *this;
    ParamAtom up;
    up.coeffs.assign(static_cast<std::size_t>(clocks_), Rational(0));
    up.delta_coeff = 1;
    up.constant = hi;
    p.rows_.push_back(up);
    ParamAtom lo;
    lo.coeffs.assign(static_cast<std::size_t>(clocks_), Rational(0));
    lo.delta_coeff = -1;
    lo.constant = 0;
    p.rows_.push_back(lo);
    p.normalize();
    return p;
}

namespace {

struct RowShape {
    ClockId left = kRefClock;
    ClockId right = kRefClock;
    Rational scale = 1;  // positive factor the row was divided by
};

/// Classify a row's clock part as x, −x, x−y, or none. Throws when the
/// pattern is not difference-bound shaped.
RowShape classify_row(const ParamAtom& r, int clocks) {
    RowShape s;
    std::vector<int> pos, neg;
    for (int i = 0; i < clocks; ++i) {
        const Rational& c = r.coeffs[static_cast<std::size_t>(i)];
        if (c > 0) pos.push_back(i + 1);
        else if (c < 0) neg.push_back(i + 1);
    }
    if (pos.size() > 1 || neg.size() > 1)
        throw InternalError("polyhedron row is not difference-bound shaped");
    if (pos.size() == 1 && neg.size() == 1) {
        Rational cp = r.coeffs[static_cast<std::size_t>(pos[0]) - 1];
        Rational cn = -r.coeffs[static_cast<std::size_t>(neg[0]) - 1];
        if (cp != cn) throw InternalError("polyhedron row is not difference-bound shaped");
        s.left = pos[0];
        s.right = neg[0];
        s.scale = cp;
    } else if (pos.size() == 1) {
        s.left = pos[0];
        s.scale = r.coeffs[static_cast<std::size_t>(pos[0]) - 1];
    } else if (neg.size() == 1) {
        s.right = neg[0];
        s.scale = -r.coeffs[static_cast<std::size_t>(neg[0]) - 1];
    }
    return s;
}

}  // namespace

Guard ParamPoly::to_guard() const {
    Guard g;
    for (const auto& r : rows_) {
        RowShape s = classify_row(r, clocks_);
        if (s.left == kRefClock && s.right == kRefClock) {
            // Δ-only or constant row
            if (r.delta_coeff == 0) {
                bool ok = r.strict ? (r.constant > 0) : (r.constant >= 0);
                if (!ok) throw InternalError("to_guard on an empty polyhedron");
                continue;
            }
            DeltaAtom da;
            if (r.delta_coeff > 0) {
                da.rel = r.strict ? Rel::Lt : Rel::Le;
                da.threshold = r.constant / r.delta_coeff;
            } else {
                da.rel = r.strict ? Rel::Gt : Rel::Ge;
                da.threshold = r.constant / r.delta_coeff;
            }
            g.delta_atoms.push_back(da);
            continue;
        }
        // (left - right)·scale + cΔ·Δ ≺ k
        AtomicConstraint a;
        if (s.left != kRefClock) {
            a.left = s.left;
            a.right = s.right;
            a.rel = r.strict ? Rel::Lt : Rel::Le;
            a.bound = LinExpr{r.constant / s.scale, -r.delta_coeff / s.scale};
        } else {
            // -x·scale + cΔ·Δ ≺ k  ⟺  x ≻ (cΔ·Δ - k)/scale
            a.left = s.right;
            a.right = kRefClock;
            a.rel = r.strict ? Rel::Gt : Rel::Ge;
            a.bound = LinExpr{-r.constant / s.scale, r.delta_coeff / s.scale};
        }
        // skip implicit x >= 0 rows
        if (a.right == kRefClock && a.rel == Rel::Ge && a.bound == LinExpr{Rational(0), Rational(0)})
            continue;
        g.atoms.push_back(a);
    }
    return g;
}

std::optional<Guard> ParamPoly::slice_at(const Rational& delta) const {
    Guard g = to_guard();
    Guard out;
    for (const auto& da : g.delta_atoms)
        if (!da.holds_at(delta)) return std::nullopt;
    for (const auto& a : g.atoms) {
        AtomicConstraint c = a;
        c.bound = LinExpr(a.bound.at(delta));
        out.atoms.push_back(c);
    }
    return out;
}

std::string ParamPoly::to_string() const {
    std::ostringstream oss;
    oss << "{";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) oss << ", ";
        const auto& r = rows_[i];
        bool first = true;
        for (int c = 0; c < clocks_; ++c) {
            const Rational& v = r.coeffs[static_cast<std::size_t>(c)];
            if (v == 0) continue;
            if (!first && v > 0) oss << "+";
            if (v == -1) oss << "-";
            else if (v != 1) oss << rational_to_string(v) << "*";
            oss << "x" << (c + 1);
            first = false;
        }
        if (r.delta_coeff != 0) {
            if (!first && r.delta_coeff > 0) oss << "+";
            if (r.delta_coeff == -1) oss << "-";
            else if (r.delta_coeff != 1) oss << rational_to_string(r.delta_coeff) << "*";
            oss << "D";
            first = false;
        }
        if (first) oss << "0";
        oss << (r.strict ? " < " : " <= ") << rational_to_string(r.constant);
    }
    oss << "}";
    return oss.str();
}

// ── Sets ────────────────────────────────────────────────────────────────────

PolySet poly_prune(const PolySet& s) {
    PolySet out;
    for (const auto& p : s)
        if (!p.is_empty()) out.push_back(p);
    return out;
}

PolySet poly_union(const PolySet& a, const PolySet& b) {
    PolySet out = a;
    for (const auto& p : b) out.push_back(p);
    return poly_prune(out);
}

PolySet poly_intersect(const PolySet& a, const PolySet& b) {
    PolySet out;
    for (const auto& p : a)
        for (const auto& q : b) {
            ParamPoly r = p.intersect(q);
            if (!r.is_empty()) out.push_back(r);
        }
    return out;
}

PolySet poly_subtract_convex(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_empty()) return {};
    if (b.is_empty()) return {a};
    PolySet out;
    ParamPoly rest = a;
    for (const auto& row : b.rows()) {
        ParamAtom neg;
        neg.coeffs.resize(row.coeffs.size());
        for (std::size_t i = 0; i < row.coeffs.size(); ++i) neg.coeffs[i] = -row.coeffs[i];
        neg.delta_coeff = -row.delta_coeff;
        neg.constant = -row.constant;
        neg.strict = !row.strict;
        ParamPoly piece = rest;
        piece.add_row(neg);
        if (!piece.is_empty()) out.push_back(piece);
        ParamPoly next = rest;
        next.add_row(row);
        rest = next;
        if (rest.is_empty()) break;
    }
    return out;
}

PolySet poly_subtract(const PolySet& a, const PolySet& b) {
    PolySet rest = poly_prune(a);
    for (const auto& q : b) {
        PolySet next;
        for (const auto& p : rest)
            for (auto& piece : poly_subtract_convex(p, q)) next.push_back(std::move(piece));
        rest = std::move(next);
        if (rest.empty()) break;
    }
    return rest;
}

bool poly_set_empty(const PolySet& s) {
    return std::all_of(s.begin(), s.end(), [](const ParamPoly& p) { return p.is_empty(); });
}

bool poly_includes(const PolySet& outer, const PolySet& inner) {
    return poly_set_empty(poly_subtract(inner, outer));
}

// ── Game operators ──────────────────────────────────────────────────────────

PolySet ppred_edge(const PolySet& target, const Guard& guard, const std::vector<ClockId>& resets,
                   const Guard& target_invariant, int clocks) {
    PolySet out;
    for (const auto& t : target) {
        ParamPoly p = t.intersect(ParamPoly::orthant(clocks).and_guard(target_invariant));
        p = p.unreset(resets);
        p = p.and_guard(guard);
        if (!p.is_empty()) out.push_back(p);
    }
    return out;
}

PolySet ppost_edge(const PolySet& source, const Guard& guard, const std::vector<ClockId>& resets,
                   const Guard& target_invariant, int clocks) {
    PolySet out;
    for (const auto& s : source) {
        ParamPoly p = s.and_guard(guard);
        p = p.reset(resets);
        p = p.and_guard(target_invariant);
        (void)clocks;
        if (!p.is_empty()) out.push_back(p);
    }
    return out;
}

PolySet ppred_t(const PolySet& target, const PolySet& avoid, const Guard& invariant, int clocks) {
    ParamPoly inv = ParamPoly::orthant(clocks).and_guard(invariant);
    PolySet good;
    for (const auto& t : target) {
        ParamPoly g = t.intersect(inv);
        if (!g.is_empty()) good.push_back(g);
    }
    PolySet bad;
    for (const auto& b : avoid) {
        ParamPoly p = b.intersect(inv);
        if (!p.is_empty()) bad.push_back(p);
    }

    PolySet result;
    for (const auto& g : good) {
        ParamPoly past_g = g.elapse_past();
        PolySet acc{past_g};
        for (const auto& b : bad) {
            ParamPoly past_b = b.elapse_past();
            PolySet part = poly_subtract({past_g}, {past_b});
            PolySet reentry;
            for (auto& piece : poly_subtract({g.intersect(past_b)}, {b}))
                reentry.push_back(piece.elapse_past());
            part = poly_union(part, reentry);
            acc = poly_intersect(acc, part);
            if (acc.empty()) break;
        }
        for (auto& p : acc) {
            ParamPoly r = p.intersect(inv);
            if (!r.is_empty()) result.push_back(r);
        }
    }
    return result;
}

// ── Δ projection ────────────────────────────────────────────────────────────

std::vector<DeltaInterval> project_delta(const PolySet& region) {
    std::vector<DeltaInterval> out;
    for (const auto& p : region) {
        ParamPoly zeroed = p.with_clocks_zero();
        if (zeroed.is_empty()) continue;
        std::vector<ExtRow> rows;
        for (const auto& a : zeroed.rows()) rows.push_back(to_ext(a));
        bool ok = true;
        for (int c = 0; c < zeroed.clocks(); ++c)
            if (!eliminate_var(rows, static_cast<std::size_t>(c))) {
                ok = false;
                break;
            }
        if (!ok) continue;
        DeltaInterval iv;
        iv.lo = 0;
        iv.hi_unbounded = true;
        bool empty = false;
        for (const auto& r : rows) {
            const Rational& cd = r.c[static_cast<std::size_t>(zeroed.clocks())];
            if (cd == 0) {
                bool sat = r.strict ? (r.k > 0) : (r.k >= 0);
                if (!sat) empty = true;
                continue;
            }
            Rational bound = r.k / cd;
            if (cd > 0) {
                if (iv.hi_unbounded || bound < iv.hi || (bound == iv.hi && r.strict)) {
                    iv.hi = bound;
                    iv.hi_strict = r.strict;
                    iv.hi_unbounded = false;
                }
            } else {
                if (bound > iv.lo || (bound == iv.lo && r.strict)) {
                    iv.lo = bound;
                    iv.lo_strict = r.strict;
                }
            }
        }
        if (empty) continue;
        if (!iv.hi_unbounded) {
            if (iv.hi < iv.lo) continue;
            if (iv.hi == iv.lo && (iv.lo_strict || iv.hi_strict)) continue;
        }
        out.push_back(iv);
    }
    return out;
}

MinimizeResult minimize_delta(const std::vector<DeltaInterval>& intervals) {
    if (intervals.empty())
        throw InternalError("minimize_delta on an empty interval set");
    MinimizeResult best;
    bool first = true;
    for (const auto& iv : intervals) {
        if (first || iv.lo < best.value || (iv.lo == best.value && !iv.lo_strict)) {
            best.value = iv.lo;
            best.attained = !iv.lo_strict;
            first = false;
        }
    }
    return best;
}

std::string polyset_to_string(const PolySet& s) {
    if (s.empty()) return "{}";
    std::ostringstream oss;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) oss << " U ";
        oss << s[i].to_string();
    }
    return oss.str();
}

}  // namespace robusta

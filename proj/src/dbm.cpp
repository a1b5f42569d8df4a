#include "robusta/dbm.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace robusta {

namespace {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
}

// ── Bound ───────────────────────────────────────────────────────────────────

Bound Bound::infinity() { return Bound{kInf, true}; }

bool Bound::is_infinity() const { return value >= kInf; }

bool Bound::operator<(const Bound& o) const {
    if (is_infinity()) return false;
    if (o.is_infinity()) return true;
    if (value != o.value) return value < o.value;
    return strict && !o.strict;
}

Bound Bound::operator+(const Bound& o) const {
    if (is_infinity() || o.is_infinity()) return infinity();
    return Bound{value + o.value, strict || o.strict};
}

Bound Bound::negated_complement() const {
    if (is_infinity()) throw InternalError("cannot complement an infinite bound");
    return Bound{-value, !strict};
}

std::string Bound::to_string() const {
    if (is_infinity()) return "inf";
    return (strict ? "<" : "<=") + std::to_string(value);
}

// ── Dbm construction ────────────────────────────────────────────────────────

Dbm::Dbm(int dim, bool empty) : dim_(dim), empty_(empty) {
    m_.assign(static_cast<std::size_t>(dim) * dim, Bound::infinity());
    for (int i = 0; i < dim; ++i) set(i, i, Bound::le_zero());
}

Dbm Dbm::universe(int dim) {
    Dbm z(dim, false);
    for (int j = 1; j < dim; ++j) z.set(0, j, Bound::le_zero());  // x_j >= 0
    return z;
}

Dbm Dbm::zero(int dim) {
    Dbm z(dim, false);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) z.set(i, j, Bound::le_zero());
    return z;
}

Dbm Dbm::empty(int dim) { return Dbm(dim, true); }

// ── Canonicalization ────────────────────────────────────────────────────────

void Dbm::close() {
    if (empty_) return;
    for (int k = 0; k < dim_; ++k)
        for (int i = 0; i < dim_; ++i) {
            Bound ik = at(i, k);
            if (ik.is_infinity()) continue;
            for (int j = 0; j < dim_; ++j) {
                Bound via = ik + at(k, j);
                if (via < at(i, j)) set(i, j, via);
            }
        }
    for (int i = 0; i < dim_; ++i)
        if (at(i, i) < Bound::le_zero()) {
            empty_ = true;
            return;
        }
}

// ── Operations ──────────────────────────────────────────────────────────────

Dbm Dbm::constrained(int i, int j, Bound b) const {
    if (empty_) return *this;
    Dbm z = *this;
    if (b < z.at(i, j)) {
        z.set(i, j, b);
        z.close();
    }
    return z;
}

Dbm Dbm::and_guard(const Guard& g) const {
    if (empty_) return *this;
    Dbm z = *this;
    for (const auto& da : g.delta_atoms) {
        (void)da;
        throw InternalError("delta atom reached the zone layer uninstantiated");
    }
    for (const auto& a : g.atoms) {
        if (!a.bound.is_constant())
            throw InternalError("parametric bound reached the zone layer uninstantiated");
        std::int64_t k = to_int64(a.bound.base);
        if (is_upper(a.rel)) {
            // left - right < / <= k
            z = z.constrained(a.left, a.right, Bound{k, is_strict(a.rel)});
        } else {
            // left - right > / >= k  <=>  right - left < / <= -k
            z = z.constrained(a.right, a.left, Bound{-k, is_strict(a.rel)});
        }
        if (z.is_empty()) break;
    }
    return z;
}

Dbm Dbm::up() const {
    if (empty_) return *this;
    Dbm z = *this;
    for (int i = 1; i < dim_; ++i) z.set(i, 0, Bound::infinity());
    z.close();
    return z;
}

Dbm Dbm::down() const {
    if (empty_) return *this;
    Dbm z = *this;
    for (int j = 1; j < dim_; ++j) z.set(0, j, Bound::le_zero());
    z.close();
    return z;
}

Dbm Dbm::reset(const std::vector<ClockId>& clocks) const {
    if (empty_) return *this;
    Dbm z = *this;
    for (ClockId c : clocks) {
        for (int j = 0; j < dim_; ++j) {
            z.set(c, j, z.at(0, j));
            z.set(j, c, z.at(j, 0));
        }
        z.set(c, c, Bound::le_zero());
        z.set(c, 0, Bound::le_zero());
        z.set(0, c, Bound::le_zero());
    }
    z.close();
    return z;
}

Dbm Dbm::free(const std::vector<ClockId>& clocks) const {
    if (empty_) return *this;
    Dbm z = *this;
    for (ClockId c : clocks) {
        for (int j = 0; j < dim_; ++j) {
            if (j == c) continue;
            z.set(c, j, Bound::infinity());
            z.set(j, c, Bound::infinity());
        }
        z.set(0, c, Bound::le_zero());
    }
    z.close();
    return z;
}

Dbm Dbm::intersect(const Dbm& o) const {
    if (empty_) return *this;
    if (o.empty_) return o;
    Dbm z = *this;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (o.at(i, j) < z.at(i, j)) z.set(i, j, o.at(i, j));
    z.close();
    return z;
}

Dbm Dbm::extrapolate(const std::vector<std::int64_t>& max_consts) const {
    if (empty_) return *this;
    Dbm z = *this;
    auto mc = [&](int i) -> std::int64_t { return i == 0 ? 0 : max_consts.at(static_cast<std::size_t>(i)); };
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            if (i == j) continue;
            Bound b = z.at(i, j);
            if (b.is_infinity()) continue;
            if (i != 0 && b.value > mc(i)) {
                z.set(i, j, Bound::infinity());
            } else if (b.value < -mc(j)) {
                z.set(i, j, Bound::lt(-mc(j)));
            }
        }
    z.close();
    return z;
}

bool Dbm::includes(const Dbm& o) const {
    if (o.empty_) return true;
    if (empty_) return false;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (at(i, j) < o.at(i, j)) return false;
    return true;
}

bool Dbm::intersects(const Dbm& o) const { return !intersect(o).is_empty(); }

bool Dbm::operator==(const Dbm& o) const {
    if (empty_ && o.empty_) return true;
    if (empty_ != o.empty_) return false;
    return m_ == o.m_;
}

bool Dbm::contains(const std::vector<Rational>& valuation) const {
    if (empty_) return false;
    auto val = [&](int i) -> Rational {
        return i == 0 ? Rational(0) : valuation.at(static_cast<std::size_t>(i));
    };
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Bound b = at(i, j);
            if (b.is_infinity()) continue;
            Rational diff = val(i) - val(j);
            if (b.strict ? !(diff < b.value) : !(diff <= b.value)) return false;
        }
    return true;
}

std::vector<Rational> Dbm::sample_point() const {
    if (empty_) throw InternalError("sample_point on empty zone");
    std::vector<Rational> v(static_cast<std::size_t>(dim_), Rational(0));
    // Assign clocks one by one, keeping all constraints against already
    // assigned clocks (and the reference) satisfiable.
    for (int i = 1; i < dim_; ++i) {
        // lower bound: v_j - m[j][i]  over assigned j (v_0 = 0)
        Rational lo(0);
        bool lo_strict = false;
        Rational hi(0);
        bool hi_strict = false;
        bool hi_inf = true;
        for (int j = 0; j < i; ++j) {
            Bound bji = at(j, i);  // x_j - x_i <= bji  =>  x_i >= v_j - bji
            if (!bji.is_infinity()) {
                Rational cand = v[static_cast<std::size_t>(j)] - Rational(bji.value);
                if (cand > lo || (cand == lo && bji.strict && !lo_strict)) {
                    lo = cand;
                    lo_strict = bji.strict;
                }
            }
            Bound bij = at(i, j);  // x_i - x_j <= bij  =>  x_i <= v_j + bij
            if (!bij.is_infinity()) {
                Rational cand = v[static_cast<std::size_t>(j)] + Rational(bij.value);
                if (hi_inf || cand < hi || (cand == hi && bij.strict && !hi_strict)) {
                    hi = cand;
                    hi_strict = bij.strict;
                    hi_inf = false;
                }
            }
        }
        Rational x;
        if (hi_inf) {
            x = lo_strict ? lo + 1 : lo;
        } else if (!lo_strict && !hi_strict) {
            x = (lo + hi) / 2;
        } else {
            x = (lo + hi) / 2;
            if (lo == hi) x = lo;  // point interval; strictness would mean empty
        }
        v[static_cast<std::size_t>(i)] = x;
    }
    return v;
}

bool Dbm::delay_interval(const std::vector<Rational>& valuation, Rational& lo, bool& lo_strict,
                         Rational& hi, bool& hi_strict, bool& hi_unbounded) const {
    if (empty_) return false;
    auto val = [&](int i) -> Rational {
        return i == 0 ? Rational(0) : valuation.at(static_cast<std::size_t>(i));
    };
    lo = 0;
    lo_strict = false;
    hi = 0;
    hi_strict = false;
    hi_unbounded = true;
    bool hi_set = false;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Bound b = at(i, j);
            if (b.is_infinity() || i == j) continue;
            Rational diff = val(i) - val(j);
            if (i != 0 && j != 0) {
                // delay-invariant difference constraint
                bool ok = b.strict ? diff < b.value : diff <= b.value;
                if (!ok) return false;
            } else if (j == 0) {
                // x_i + d <= b  =>  d <= b - x_i
                Rational ub = Rational(b.value) - diff;
                if (!hi_set || ub < hi || (ub == hi && b.strict && !hi_strict)) {
                    hi = ub;
                    hi_strict = b.strict;
                    hi_set = true;
                    hi_unbounded = false;
                }
            } else {
                // -x_j - d <= b  =>  d >= -b - x_j ; diff = -x_j
                Rational lb = Rational(-b.value) + diff;
                if (lb > lo || (lb == lo && b.strict && !lo_strict)) {
                    lo = lb;
                    lo_strict = b.strict;
                }
            }
        }
    if (lo < 0) {
        lo = 0;
        lo_strict = false;
    }
    if (!hi_unbounded) {
        if (hi < lo) return false;
        if (hi == lo && (lo_strict || hi_strict)) return false;
    }
    return true;
}

std::string Dbm::to_string(const std::vector<std::string>& clock_names) const {
    if (empty_) return "false";
    auto name = [&](int i) -> std::string {
        if (i == 0) return "0";
        if (static_cast<std::size_t>(i) <= clock_names.size())
            return clock_names[static_cast<std::size_t>(i) - 1];
        return "x" + std::to_string(i);
    };
    std::ostringstream oss;
    bool first = true;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            if (i == j) continue;
            Bound b = at(i, j);
            if (b.is_infinity()) continue;
            if (i == 0 && b == Bound::le_zero()) continue;  // x_j >= 0 implicit
            if (!first) oss << " && ";
            first = false;
            if (i == 0) {
                oss << name(j) << (b.strict ? " > " : " >= ") << -b.value;
            } else if (j == 0) {
                oss << name(i) << (b.strict ? " < " : " <= ") << b.value;
            } else {
                oss << name(i) << " - " << name(j) << (b.strict ? " < " : " <= ") << b.value;
            }
        }
    if (first) return "true";
    return oss.str();
}

std::string Dbm::key() const {
    if (empty_) return "";
    std::ostringstream oss;
    for (const auto& b : m_) {
        if (b.is_infinity()) oss << "I;";
        else oss << b.value << (b.strict ? "s" : "w") << ";";
    }
    return oss.str();
}

}  // namespace robusta

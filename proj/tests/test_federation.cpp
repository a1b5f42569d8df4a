#include "robusta/federation.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace robusta;
using namespace robusta::test;

namespace {

Dbm interval(int dim, ClockId c, Rational lo, bool lo_strict, Rational hi, bool hi_strict) {
    Dbm z = Dbm::universe(dim);
    z = z.constrained(c, 0, Bound{to_int64(hi), hi_strict});
    z = z.constrained(0, c, Bound{to_int64(-lo), lo_strict});
    return z;
}

Dbm point(int dim, ClockId c, int v) {
    return interval(dim, c, Rational(v), false, Rational(v), false);
}

}  // namespace

TEST_CASE("a minus a is empty") {
    Rng rng(4242);
    for (int i = 0; i < 30; ++i) {
        Federation f = random_federation(rng, 2, 4);
        CHECK(f.subtract(f).is_empty());
    }
}

TEST_CASE("interval split subtraction") {
    // [0,5] \ (2,3) = [0,2] ∪ [3,5]
    Federation a(interval(2, 1, Rational(0), false, Rational(5), false));
    Federation b(interval(2, 1, Rational(2), true, Rational(3), true));
    Federation d = a.subtract(b);
    CHECK(d.contains({Rational(0), Rational(2)}));
    CHECK(d.contains({Rational(0), Rational(3)}));
    CHECK(d.contains({Rational(0), Rational(0)}));
    CHECK(d.contains({Rational(0), Rational(5)}));
    CHECK(!d.contains({Rational(0), Rational(5, 2)}));
}

TEST_CASE("set operations match the pointwise oracle") {
    Rng rng(20240602);
    int mismatches = 0;
    for (int inst = 0; inst < 60; ++inst) {
        int clocks = rng.uniform(2, 3);
        Federation a = random_federation(rng, clocks, 4);
        Federation b = random_federation(rng, clocks, 4);
        Federation uni = a.unite(b);
        Federation inter = a.intersect(b);
        Federation diff = a.subtract(b);
        Federation up_a = a.up();
        Federation down_a = a.down();
        std::vector<ClockId> resets{1};
        Federation reset_a = a.reset(resets);
        Federation free_a = a.free(resets);
        for (int p = 0; p < 80; ++p) {
            Valuation u = random_valuation(rng, clocks, 5);
            bool ia = a.contains(u), ib = b.contains(u);
            if (uni.contains(u) != (ia || ib)) ++mismatches;
            if (inter.contains(u) != (ia && ib)) ++mismatches;
            if (diff.contains(u) != (ia && !ib)) ++mismatches;
            if (up_a.contains(u) != oracle_in_up(a, u)) ++mismatches;
            if (down_a.contains(u) != oracle_in_down(a, u)) ++mismatches;
            if (reset_a.contains(u) != oracle_in_reset(a, resets, u)) ++mismatches;
            if (free_a.contains(u) != oracle_in_free(a, resets, u)) ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("pred_t of a point with no obstacle is its past") {
    Federation x(point(2, 1, 5));
    Federation none(2);
    Federation p = pred_t(x, none);
    CHECK(p.same_set(x.down()));
}

TEST_CASE("pred_t around an open window") {
    // pred_t({x=5}, (2,3)) = [3,5]
    Federation x(point(2, 1, 5));
    Federation y(interval(2, 1, Rational(2), true, Rational(3), true));
    Federation p = pred_t(x, y);
    CHECK(p.contains({Rational(0), Rational(3)}));
    CHECK(p.contains({Rational(0), Rational(5)}));
    CHECK(p.contains({Rational(0), Rational(4)}));
    CHECK(!p.contains({Rational(0), Rational(5, 2)}));
    CHECK(!p.contains({Rational(0), Rational(2)}));
    CHECK(!p.contains({Rational(0), Rational(1)}));
}

TEST_CASE("pred_t removing its own target keeps nothing") {
    Rng rng(555);
    for (int i = 0; i < 20; ++i) {
        Federation x = random_federation(rng, 2, 3);
        Federation p = pred_t(x, x);
        CHECK(p.is_empty());
    }
}

TEST_CASE("pred_t matches the exact oracle on random federations") {
    Rng rng(20240603);
    int mismatches = 0;
    for (int inst = 0; inst < 60; ++inst) {
        int clocks = rng.uniform(2, 3);
        Federation x = random_federation(rng, clocks, 4);
        Federation y = random_federation(rng, clocks, 4);
        Federation p = pred_t(x, y);
        for (int i = 0; i < 60; ++i) {
            Valuation u = random_valuation(rng, clocks, 5);
            if (p.contains(u) != oracle_in_pred_t(x, y, u)) ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("pred_t matches the discretized-delay oracle at granularity 1/8") {
    Rng rng(20240604);
    int mismatches = 0;
    for (int inst = 0; inst < 20; ++inst) {
        Federation x = random_federation(rng, 2, 3);
        Federation y = random_federation(rng, 2, 3);
        Federation p = pred_t(x, y);
        for (int i = 0; i < 25; ++i) {
            // grid points only: the discretized oracle is exact there for
            // sets whose constants live on the same grid
            Valuation u{Rational(0), Rational(rng.uniform(0, 32), 8),
                        Rational(rng.uniform(0, 32), 8)};
            bool disc = discretized_pred_t(x, y, u, Rational(1, 8), Rational(8));
            bool exact = oracle_in_pred_t(x, y, u);
            // the discretized oracle can only miss strict-boundary cases;
            // compare it to the implementation only when it agrees with the
            // exact oracle
            if (disc == exact && p.contains(u) != disc) ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("succ_t matches the exact oracle") {
    Rng rng(20240605);
    int mismatches = 0;
    for (int inst = 0; inst < 50; ++inst) {
        int clocks = rng.uniform(2, 3);
        Federation x = random_federation(rng, clocks, 4);
        Federation y = random_federation(rng, clocks, 4);
        Federation s = succ_t(x, y);
        for (int i = 0; i < 60; ++i) {
            Valuation u = random_valuation(rng, clocks, 5);
            if (s.contains(u) != oracle_in_succ_t(x, y, u)) ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("includes is mutual membership") {
    Rng rng(808);
    for (int i = 0; i < 30; ++i) {
        Federation a = random_federation(rng, 2, 4);
        Federation b = random_federation(rng, 2, 4);
        if (a.includes(b) && b.includes(a)) {
            for (int p = 0; p < 50; ++p) {
                Valuation u = random_valuation(rng, 2, 5);
                CHECK(a.contains(u) == b.contains(u));
            }
        }
    }
}

TEST_CASE("pred_t with empty obstacle equals down exactly") {
    Rng rng(909);
    for (int i = 0; i < 30; ++i) {
        Federation x = random_federation(rng, 3, 4);
        CHECK(pred_t(x, Federation(x.dim())).same_set(x.down()));
    }
}

TEST_CASE("complement covers exactly the outside") {
    Rng rng(1010);
    for (int i = 0; i < 30; ++i) {
        Guard g;
        int n = rng.uniform(1, 3);
        for (int c = 0; c < n; ++c) {
            ClockId l = rng.uniform(1, 2);
            Rel rel = static_cast<Rel>(rng.uniform(0, 3));
            int k = rng.uniform(0, 4);
            g.atoms.push_back(AtomicConstraint{l, kRefClock, rel, LinExpr(Rational(k))});
        }
        Federation inside(guard_to_dbm(g, 3));
        Federation outside(3);
        for (const auto& piece : complement_guard(g)) outside.add(guard_to_dbm(piece, 3));
        for (int p = 0; p < 50; ++p) {
            Valuation u = random_valuation(rng, 2, 5);
            CHECK(inside.contains(u) != outside.contains(u));
        }
    }
}

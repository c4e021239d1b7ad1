#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracpoly/counting.hpp"
#include "fracpoly/prng.hpp"

#include <numeric>

using namespace fracpoly;

TEST_CASE("squarefull_split examples and roundtrip") {
    CHECK(squarefull_split(12) == std::pair<u64, u64>{4, 3});
    CHECK(squarefull_split(1) == std::pair<u64, u64>{1, 1});
    CHECK(squarefull_split(360) == std::pair<u64, u64>{72, 5});

    for (u64 s = 1; s <= 100000; ++s) {
        auto [s0, s1] = squarefull_split(s);
        REQUIRE(s0 * s1 == s);
        REQUIRE(std::gcd(s0, s1) == 1);
    }
    // full definition check on a smaller range
    for (u64 s = 1; s <= 3000; ++s) {
        auto [s0, s1] = squarefull_split(s);
        REQUIRE(is_squarefull(s0));
        REQUIRE(is_squarefree(s1));
    }
}

TEST_CASE("count_Nk examples") {
    CHECK(count_Nk({2, 3, 1, 2, 2, 3, 7}) == 3);
    CHECK(count_Nk({2, 2, 9, 5, 1, 3, 10}) == 0);
    CHECK(count_Nk({3, 1, 6, 4, 1, 1, 7}) == 1);
}

TEST_CASE("count_Nk monotone in Z and D, invariant under a -> a+q") {
    Xorshift64Star rng(42);
    for (int t = 0; t < 50; ++t) {
        u64 q = 101 + rng.next() % 900;
        NkQuery base;
        base.k = 2 + static_cast<int>(rng.next() % 3);
        base.q = q;
        base.Y = 1 + rng.next() % (q - 1);
        base.D = 1 + rng.next() % 5;
        base.Z = Rational(2 + static_cast<long long>(rng.next() % 50));
        base.s = 1 + rng.next() % (q - 1);
        i64 a = 1 + static_cast<i64>(rng.next() % (q - 1));
        while (std::gcd(modnorm(a, q), q) != 1) ++a;
        base.a = a;

        u64 c = count_Nk(base);

        NkQuery smallerZ = base;
        smallerZ.Z = base.Z > 3 ? base.Z - 1 : base.Z;
        CHECK(count_Nk(smallerZ) >= c);

        NkQuery biggerD = base;
        biggerD.D = base.D + 3;
        CHECK(count_Nk(biggerD) >= c);

        NkQuery shifted = base;
        shifted.a = base.a + static_cast<i64>(q);
        CHECK(count_Nk(shifted) == c);
    }
}

TEST_CASE("check_Nk_bounds lemma3 example") {
    NkQuery query{2, 2, 9, 5, 1, 3, 10};
    auto reports = check_Nk_bounds(query, 1e-3, 100);
    bool found = false;
    for (const auto& r : reports) {
        if (r.bound_name == "lemma3i") {
            // D = 9 so lemma3i is inapplicable; lemma3ii applies (sD^2 = 81 < ... no)
            CHECK_FALSE(r.applicable);
        }
        if (r.bound_name == "lemma1i") CHECK_FALSE(r.applicable);
        if (r.bound_name == "lemma1ii") found = true;
    }
    CHECK(found);

    NkQuery q2{2, 2, 1, 5, 1, 3, 10};
    auto reports2 = check_Nk_bounds(q2, 1e-3, 100);
    for (const auto& r : reports2) {
        if (r.bound_name == "lemma3i") {
            CHECK(r.applicable);
            CHECK(r.bound_value == doctest::Approx(2.3139).epsilon(1e-3));
            CHECK(r.ratio <= 2.0);  // finite, sane
        }
    }
}

TEST_CASE("enumerate_A examples") {
    CHECK(enumerate_A({4, 2, 1, 1}) == std::vector<u64>{24});
    CHECK(enumerate_A({4, 2, 3, 1}).empty());
    CHECK(enumerate_A({8, 1, 1, 1}) == std::vector<u64>{18});
}

TEST_CASE("enumerate_A sorted, unique, members conform") {
    ASetQuery query{64, 16, 2, 3};
    auto v = enumerate_A(query);
    for (std::size_t i = 1; i < v.size(); ++i) REQUIRE(v[i - 1] < v[i]);
    for (u64 s : v) {
        auto [s0, s1] = squarefull_split(s);
        REQUIRE(s0 > query.S0);
        REQUIRE(s0 <= 2 * query.S0);
        REQUIRE(s1 > query.S1);
        REQUIRE(s1 <= 2 * query.S1);
        REQUIRE(s0 % query.d0 == 0);
        REQUIRE(s1 % query.d1 == 0);
    }
}

TEST_CASE("check_lemma4 example and grid") {
    auto r = check_lemma4({4, 2, 1, 1}, 100, 0.01);
    CHECK(r.exact_count == 1);
    CHECK(r.bound_value == doctest::Approx(4.1885).epsilon(1e-3));
    CHECK(r.ratio == doctest::Approx(0.2387).epsilon(1e-2));

    // d1 > 2 S1: no multiple of d1 in range
    auto r2 = check_lemma4({4, 2, 1, 5}, 100, 0.01);
    CHECK(r2.exact_count == 0);
    CHECK(r2.ratio == 0.0);

    double max_ratio = 0;
    for (u64 S0 : {4, 16, 64, 256})
        for (u64 S1 : {4, 16, 64, 256})
            for (u64 d0 : {1, 2, 3})
                for (u64 d1 : {1, 2, 3}) {
                    auto g = check_lemma4({S0, S1, d0, d1}, 100000, 0.01);
                    REQUIRE(std::isfinite(g.ratio));
                    max_ratio = std::max(max_ratio, g.ratio);
                }
    CHECK(max_ratio > 0);
    CHECK(std::isfinite(max_ratio));
}

TEST_CASE("count_Mk examples") {
    // q prime, all ||.|| >= 1/q > 1/Z impossible when Z > q
    MkQuery m1;
    m1.k = 3;
    m1.Y = 2;
    m1.Z = 20;
    m1.S0 = 4;
    m1.S1 = 2;
    m1.a = 1;
    m1.q = 11;
    m1.gcd_cap = 1;
    CHECK(count_Mk(m1).count == 0);

    // Z = 2, odd q: every residue passes
    MkQuery m2 = m1;
    m2.Z = 2;
    u64 expect = 0;
    for (u64 y = 3; y <= 4; ++y)
        if (std::gcd(y, m2.q) <= m2.gcd_cap) ++expect;
    CHECK(count_Mk(m2).count == expect);

    MkQuery m3 = m1;
    m3.Z = 4;
    CHECK(count_Mk(m3).count == 1);  // y = 3 hits via s = 24
}

TEST_CASE("count_Mk trivial upper bound and empty-A flag") {
    MkQuery m;
    m.k = 2;
    m.Y = 5;
    m.Z = 3;
    m.S0 = 8;
    m.S1 = 2;
    m.a = 3;
    m.q = 101;
    m.gcd_cap = 2;
    auto mc = count_Mk(m);
    u64 ycount = 0;
    for (u64 y = 6; y <= 10; ++y)
        if (std::gcd(y, m.q) <= m.gcd_cap) ++ycount;
    CHECK(mc.count <= ycount);

    MkQuery empty = m;
    empty.S0 = 5;  // squarefull in (5,10]: 8,9 -> not empty; use (2,4]: 4 only, d...
    empty.S1 = 2;
    // force empty: squarefull block (2,4] = {4}, squarefree block (3,6] with d1
    // nothing shared with 4 once we pick S1 so that all s1 are even
    MkQuery e2 = m;
    e2.S0 = 2;   // s0 = 4
    e2.S1 = 1;   // s1 = 2 -> gcd(4,2) != 1 -> empty
    auto r = count_Mk(e2);
    CHECK(r.a_set_empty);
    CHECK(r.count == 0);
}

TEST_CASE("check_Mk_bounds flags") {
    MkQuery m;
    m.k = 3;
    m.Y = 2;
    m.Z = 4;
    m.S0 = 4;
    m.S1 = 2;
    m.a = 1;
    m.q = 11;
    auto b = check_Mk_bounds(m, 1e-3, 100, 0.1);
    CHECK_FALSE(b.cond_2_5);  // 4*4*2*100^0.3 = 126.9 >= 11
    bool has24 = false, has28 = false;
    for (auto& r : b.reports) {
        if (r.bound_name == "eq2.4") has24 = true;
        if (r.bound_name == "eq2.8") has28 = true;
        CHECK(std::isfinite(r.ratio));
    }
    CHECK(has24);
    CHECK(has28);
}

TEST_CASE("count_congruence examples") {
    CHECK(count_congruence(2, 4, 3, 4) == 3);
    CHECK(count_congruence(7, 1, 5, 9) == 45);
    CHECK(count_congruence(0, 5, 4, 10) == 8);
}

TEST_CASE("lemma6 exhaustive sweep u,d,L,B <= 30") {
    for (i64 u = 0; u <= 30; ++u)
        for (u64 d = 1; d <= 30; ++d)
            for (u64 L = 1; L <= 30; ++L)
                for (u64 B = 1; B <= 30; ++B) {
                    auto r = check_lemma6(u, d, L, B);
                    REQUIRE(r.hard_pass);
                }
}

TEST_CASE("count_pairs_quadratic examples") {
    PairQuery p{2, 4, 3, 1, 11};
    CHECK(count_pairs_quadratic(p) == 6);

    // Y too small to hold two distinct points under ClosedOpen at Y=1: block {1}
    PairQuery tiny{2, 4, 2, 1, 11, Interval::ClosedOpen};
    tiny.Y = 2;  // [2,4) = {2,3}: fine; instead check count parity/symmetry
    u64 c = count_pairs_quadratic(tiny);
    CHECK(c % 2 == 0);  // ordered pairs come in symmetric twos

    auto rep = check_lemma10(p, 1e-3);
    CHECK(rep.exact_count == 6);
    CHECK(std::isfinite(rep.ratio));
}

TEST_CASE("smooth_count examples") {
    CHECK(smooth_count(10, 2) == 4);
    CHECK(smooth_count(50, 50) == 50);
    CHECK(smooth_count(100, 3) == 20);
}

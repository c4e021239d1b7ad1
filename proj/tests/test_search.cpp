#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracpoly/prng.hpp"
#include "fracpoly/search.hpp"

#include <cmath>

using namespace fracpoly;

TEST_CASE("fracpart examples") {
    // integer coefficients: ||f(n)|| = 0
    auto f3x = FracPolynomial::rational({Integer(3), Integer(1)}, 1);
    for (u64 n : {1, 7, 1000}) CHECK(fracpart(f3x, n).value == 0.0);

    // sqrt(2) x^2 at n = 13: ||169 sqrt(2)|| = ||239.00208...||
    auto fs2 = FracPolynomial::irrational(AlphaSpec::sqrt_of(2), 2);
    auto r = fracpart(fs2, 13);
    CHECK(r.value == doctest::Approx(0.0020899).epsilon(1e-4));
    CHECK(r.error < 1e-9);
    CHECK(r.error > 0);

    // (17/12) x^2 at n = 12: exact zero
    auto g = FracPolynomial::rational({Integer(17), Integer(12)}, 2);
    auto rg = fracpart(g, 12);
    CHECK(rg.value == 0.0);
    CHECK(rg.error == 0.0);
}

TEST_CASE("fracpart exact path and range invariant") {
    auto g = FracPolynomial::rational({Integer(7), Integer(5)}, 3,
                                      {Rational(1, 3), Rational(0), Rational(2, 7)});
    for (u64 n = 1; n <= 200; ++n) {
        Rational v = fracpart_exact(g, n);
        CHECK(v >= 0);
        CHECK(v <= Rational(1, 2));
        CHECK(fracpart(g, n).value == doctest::Approx(v.convert_to<double>()).epsilon(1e-15));
    }
}

TEST_CASE("fracpart double-precision certificate on random samples") {
    Xorshift64Star rng(2024);
    auto f = FracPolynomial::irrational(AlphaSpec::sqrt_of(3), 4, {}, 1000000);
    for (int t = 0; t < 300; ++t) {
        u64 n = 2 + rng.next() % 999998;
        auto lo = fracpart(f, n);
        auto hi = fracpart(f, n, 1280);
        CHECK(std::abs(lo.value - hi.value) <= lo.error + 1e-300);
        CHECK(lo.value >= 0.0);
        CHECK(lo.value <= 0.5);
    }
}

TEST_CASE("fracpart precision errors") {
    auto f = FracPolynomial::irrational(AlphaSpec::sqrt_of(2), 2, {}, 100);
    CHECK_THROWS_AS(fracpart(f, 1000), DomainError);  // beyond n_max

    // 64 certified bits cannot absorb k log2(n) = 50 bits of integer part
    AlphaSpec coarse = AlphaSpec::decimal("1.414", 64);
    auto fc = FracPolynomial::irrational(coarse, 3, {}, 1000000);
    CHECK_THROWS_AS(fracpart(fc, 100000), PrecisionError);
}

TEST_CASE("construct_A worked example") {
    // N = 20, g(n) = 17 n^2 / 12, L1 = 6 -> A = {12, 18}
    ParamSchedule sched;
    sched.N = 20;
    sched.L1 = 6;
    auto g = FracPolynomial::rational({Integer(17), Integer(12)}, 2);
    auto A = construct_A(20, sched, g);
    CHECK(A.elements == std::vector<u64>{12, 18});
    CHECK(A.label == "A");

    sched.L1 = 1;  // ||.|| < 1 always
    auto all = construct_A(20, sched, g);
    CHECK(all.elements.size() == 10);
}

TEST_CASE("construct_A exact boundary exclusion") {
    // g(n) = n/4: ||g(2)|| = 1/2, L1 = 2 -> boundary equality excluded
    ParamSchedule sched;
    sched.N = 8;
    sched.L1 = 2;
    auto g = FracPolynomial::rational({Integer(1), Integer(4)}, 1);
    auto A = construct_A(8, sched, g);
    for (u64 n : A.elements) CHECK(fracpart_exact(g, n) < Rational(1, 2));
    CHECK(std::find(A.elements.begin(), A.elements.end(), 6) == A.elements.end());
    CHECK(std::find(A.elements.begin(), A.elements.end(), 8) != A.elements.end());
}

TEST_CASE("prime_records sqrt2 x^2") {
    auto f = FracPolynomial::irrational(AlphaSpec::sqrt_of(2), 2);
    auto recs = prime_records(f, 2.0 / 13.0, 100);
    REQUIRE(!recs.empty());
    CHECK(recs.front().p == 2);  // first prime always opens the running minimum

    bool has13 = false;
    for (const auto& r : recs)
        if (r.p == 13) {
            has13 = true;
            CHECK(r.fracpart == doctest::Approx(0.00209).epsilon(1e-2));
            CHECK(r.threshold == doctest::Approx(std::pow(13.0, -2.0 / 13.0)).epsilon(1e-10));
            CHECK(r.is_record);
        }
    CHECK(has13);

    // normalized values strictly decreasing
    for (std::size_t i = 1; i < recs.size(); ++i)
        CHECK(recs[i].normalized < recs[i - 1].normalized);
}

TEST_CASE("prime_records count grows with p_max") {
    auto f = FracPolynomial::irrational(AlphaSpec::sqrt_of(2), 2);
    double nu = 2.0 / 13.0;
    u64 hits_small = 0, hits_large = 0;
    // count primes with ||sqrt2 p^2|| < p^-nu directly
    for (u64 bound : {u64(1000), u64(100000)}) {
        u64 hits = 0;
        for (u64 p : primes_up_to(bound)) {
            auto r = fracpart(f, p);
            if (r.value < std::pow(static_cast<double>(p), -nu)) ++hits;
        }
        (bound == 1000 ? hits_small : hits_large) = hits;
    }
    CHECK(hits_small > 0);
    CHECK(hits_large > hits_small);
}

TEST_CASE("density_report at N = 1e4") {
    auto sched = schedule(10000, 2, true, 0.01);
    auto convs = cf_convergents(AlphaSpec::sqrt_of(2), 1000);
    auto g = FracPolynomial::rational(convs.back(), 2);
    auto rep = density_report(10000, sched, g);
    CHECK(rep.primes_in_B == 560);
    CHECK(rep.delta == doctest::Approx(1.0 / sched.L1));
    CHECK(rep.two_delta_primes_in_B == doctest::Approx(2.0 * rep.delta * 560.0));
    CHECK(std::isfinite(rep.ratio));
}

TEST_CASE("density ratio near 1 at N = 1e5") {
    auto sched = schedule(100000, 2, true, 0.01);
    auto convs = cf_convergents(AlphaSpec::sqrt_of(2), 100000);
    auto g = FracPolynomial::rational(convs.back(), 2);
    auto rep = density_report(100000, sched, g);
    CHECK(rep.primes_in_A > 0);
    // heuristic density 2 delta: expect the ratio within a factor of 2
    CHECK(rep.ratio > 0.5);
    CHECK(rep.ratio < 2.0);
}

TEST_CASE("construct_A density matches 2 delta within factor 2") {
    auto sched = schedule(100000, 2, true, 0.01);
    auto convs = cf_convergents(AlphaSpec::sqrt_of(2), 100000);
    auto g = FracPolynomial::rational(convs.back(), 2);
    auto A = construct_A(100000, sched, g);
    double expect = 2.0 * sched.delta * 50000.0;
    CHECK(static_cast<double>(A.elements.size()) > 0.5 * expect);
    CHECK(static_cast<double>(A.elements.size()) < 2.0 * expect);

    // decompose identity on A (exactness of S1-S4 on a thin set)
    auto d = decompose_S1_S4(A, 100000, 4.0 / 13.0, 1.0 / 13.0);
    CHECK(d.identity_holds);
}

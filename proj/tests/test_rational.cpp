#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracpoly/rational.hpp"

#include <cmath>

using namespace fracpoly;

namespace {

// sign of t + r*sqrt(d), exact
int sgn_surd(const Integer& t, const Integer& r, const Integer& d) {
    if (r == 0) return t == 0 ? 0 : (t > 0 ? 1 : -1);
    if (r > 0) {
        if (t >= 0) return 1;
        Integer lhs = r * r * d, rhs = t * t;
        return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    }
    return -sgn_surd(-t, -r, d);
}

// exact check of |alpha - a/q| < 1/(q*qn) for alpha = (p + r sqrt(d))/s
bool approx_invariant(const AlphaSpec& al, const Convergent& c, const Integer& qn) {
    // |(p q - a s) qn + r q qn sqrt(d)| < s
    Integer T = (al.p * c.q - c.a * al.s) * qn;
    Integer R = al.r * c.q * qn;
    return sgn_surd(T + al.s, R, al.d) > 0 && sgn_surd(T - al.s, R, al.d) < 0;
}

}  // namespace

TEST_CASE("convergent examples") {
    auto cv = cf_convergents(AlphaSpec::sqrt_of(2), 30);
    REQUIRE(cv.size() == 5);
    long long as[] = {1, 3, 7, 17, 41}, qs[] = {1, 2, 5, 12, 29};
    for (int i = 0; i < 5; ++i) {
        CHECK(cv[i].a == as[i]);
        CHECK(cv[i].q == qs[i]);
    }

    // golden ratio: Fibonacci numbers
    auto phi = cf_convergents(AlphaSpec::surd(1, 1, 2, 5), 6);
    REQUIRE(phi.size() == 5);
    long long fa[] = {1, 2, 3, 5, 8}, fq[] = {1, 1, 2, 3, 5};
    for (int i = 0; i < 5; ++i) {
        CHECK(phi[i].a == fa[i]);
        CHECK(phi[i].q == fq[i]);
    }

    // finite expansion of a rational terminates
    auto half = cf_convergents(AlphaSpec::parse("rat:1/2"), 10);
    REQUIRE(half.size() == 2);
    CHECK(half[0].a == 0);
    CHECK(half[0].q == 1);
    CHECK(half[1].a == 1);
    CHECK(half[1].q == 2);
}

TEST_CASE("convergent invariants for surds") {
    for (long long d : {2, 3, 5, 7, 61}) {
        auto al = AlphaSpec::sqrt_of(d);
        auto cv = cf_convergents(al, Integer("1000000000000"));
        REQUIRE(cv.size() >= 10);
        for (std::size_t i = 0; i + 1 < cv.size(); ++i) {
            // determinant identity, exact
            Integer det = cv[i + 1].a * cv[i].q - cv[i].a * cv[i + 1].q;
            CHECK(abs(det) == 1);
            // |alpha - a/q| < 1/(q q'), exact
            CHECK(approx_invariant(al, cv[i], cv[i + 1].q));
            // denominators strictly increasing past the first
            if (i > 0) CHECK(cv[i + 1].q > cv[i].q);
        }
    }
}

TEST_CASE("decimal convergents certified by interval arithmetic") {
    AlphaSpec pi = AlphaSpec::decimal("3.14159265358979323846", 128);
    auto cv = cf_convergents(pi, 200);
    REQUIRE(cv.size() == 4);
    CHECK(cv[1].a == 22);
    CHECK(cv[1].q == 7);
    CHECK(cv[3].a == 355);
    CHECK(cv[3].q == 113);

    // large q_max exhausts the certified interval
    bool threw = false;
    try {
        cf_convergents(pi, Integer("1000000000000000000000000000000000000000"));
    } catch (const CfPrecisionError& e) {
        threw = true;
        CHECK(e.certified.size() == 35);
        CHECK(e.certified[3].q == 113);
        CHECK(e.certified.back().q == Integer("2683529332922134987"));
    }
    CHECK(threw);

    // coarser literal certifies fewer partial quotients
    bool threw64 = false;
    try {
        cf_convergents(AlphaSpec::decimal("3.141592653589793", 64),
                       Integer("100000000000000000000"));
    } catch (const CfPrecisionError& e) {
        threw64 = true;
        CHECK(e.certified.size() == 17);
    }
    CHECK(threw64);
}

TEST_CASE("alpha parsing and validation") {
    auto s2 = AlphaSpec::parse("sqrt:2");
    CHECK(s2.kind == AlphaSpec::Kind::Surd);
    CHECK(s2.d == 2);
    CHECK(s2.is_irrational());

    auto phi = AlphaSpec::parse("surd:(1+1*sqrt5)/2");
    CHECK(phi.p == 1);
    CHECK(phi.r == 1);
    CHECK(phi.s == 2);
    CHECK(phi.d == 5);
    CHECK(phi.to_real().convert_to<double>() == doctest::Approx(1.6180339887).epsilon(1e-9));

    auto dec = AlphaSpec::parse("dec:1.4142135623<bits=128>");
    CHECK(dec.kind == AlphaSpec::Kind::Decimal);
    CHECK(dec.bits == 128);

    auto rat = AlphaSpec::parse("rat:355/113");
    CHECK(!rat.is_irrational());
    CHECK(rat.rat_value == Rational(355, 113));

    CHECK_THROWS_AS(AlphaSpec::parse("cube:2"), DomainError);
    CHECK_THROWS_AS(AlphaSpec::parse("surd:(1+sqrt5)/2"), DomainError);
    CHECK_THROWS_AS(AlphaSpec::surd(0, 1, 1, 9), DomainError);   // perfect square
    CHECK_THROWS_AS(AlphaSpec::surd(1, 1, 0, 2), DomainError);   // zero denominator
    CHECK_THROWS_AS(AlphaSpec::decimal("1.41", 32), DomainError);
}

TEST_CASE("j_invariant table") {
    CHECK(j_invariant(2, true) == 2);
    CHECK(j_invariant(3, true) == 4);
    CHECK(j_invariant(4, true) == 8);
    CHECK(j_invariant(5, true) == 16);
    CHECK(j_invariant(6, true) == 30);
    CHECK(j_invariant(10, true) == 90);
    CHECK(j_invariant(7, false) == 64);
    CHECK(j_invariant(8, false) == 112);
    CHECK(j_invariant(10, false) == 180);
    CHECK_THROWS_AS(j_invariant(1, true), DomainError);
}

TEST_CASE("rho values") {
    CHECK(rho(2, 2) == Rational(2, 13));
    CHECK(rho(3, 4) == Rational(1, 10));
    // 0.0509875 exactly
    CHECK(rho(4, 8) == Rational(4079, 80000));
    CHECK(rho(4, 8).convert_to<double>() == doctest::Approx(0.0509875).epsilon(1e-12));
    CHECK(rho(6, 30) == Rational(4079, 300000));
}

TEST_CASE("schedule formulas") {
    auto s = schedule(1000000, 2, true, 0.01, 1e-5);
    CHECK(s.rho_value == Rational(2, 13));
    CHECK(s.J == 2);
    CHECK(s.L1 == doctest::Approx(15.63532521).epsilon(1e-8));
    CHECK(s.L == doctest::Approx(7.999759357).epsilon(1e-8));
    CHECK(s.delta == doctest::Approx(1.0 / s.L1).epsilon(1e-15));
    CHECK(s.q_lo == doctest::Approx(3954152.906).epsilon(1e-8));
    CHECK(s.q_hi == doctest::Approx(2.0 * s.q_lo).epsilon(1e-15));

    auto s3 = schedule(10000, 3, true, 0.01, 1e-5);
    CHECK(s3.rho_value == Rational(1, 10));
    CHECK(s3.L1 == doctest::Approx(2.0 * std::pow(10.0, 4 * 0.095)).epsilon(1e-12));
    CHECK(s3.L1 == doctest::Approx(4.797665838).epsilon(1e-8));
    CHECK(s3.delta == doctest::Approx(1.0 / s3.L1).epsilon(1e-15));

    // exponent algebra: L / (N^(eps/7) L1) = N^(eps/42) / 2
    double lhs = s.L / (std::pow(1e6, 0.01 / 7.0) * s.L1);
    CHECK(lhs == doctest::Approx(std::pow(1e6, 0.01 / 42.0) / 2.0).epsilon(1e-10));
    CHECK(!s.l_window_ok);  // N^(eps/42)/2 > 1 needs N beyond desk scale

    // default eta is epsilon/1000
    auto sd = schedule(1000000, 2, true, 0.01);
    CHECK(sd.eta == doctest::Approx(1e-5).epsilon(1e-12));

    CHECK_THROWS_AS(schedule(5, 2, true, 0.01), DomainError);
    CHECK_THROWS_AS(schedule(1000, 2, true, 0.5), DomainError);
    CHECK_THROWS_AS(schedule(1000, 2, true, 0.01, 0.02), DomainError);
}

TEST_CASE("schedule is deterministic") {
    auto a = schedule(123456, 4, false, 0.02, 1e-4);
    auto b = schedule(123456, 4, false, 0.02, 1e-4);
    CHECK(a.L1 == b.L1);
    CHECK(a.L == b.L);
    CHECK(a.delta == b.delta);
    CHECK(a.q_lo == b.q_lo);
    CHECK(a.q_hi == b.q_hi);
    CHECK(a.rho_value == b.rho_value);
}

TEST_CASE("select_modulus re-substitution") {
    auto m = select_modulus(AlphaSpec::sqrt_of(2), 2, true, 0.01);
    CHECK(m.convergent.a == 3363);
    CHECK(m.convergent.q == 2378);
    CHECK(m.sched.N == 1005);
    double qd = m.convergent.q.convert_to<double>();
    CHECK(qd >= m.sched.q_lo);
    CHECK(qd <= m.sched.q_hi);
    // N is the largest integer with 2 N^(k+rho-eps/2) <= q^2
    double expo = 2.0 + (2.0 / 13.0) - 0.005;
    CHECK(2.0 * std::pow(static_cast<double>(m.sched.N), expo) <= qd * qd);
    CHECK(2.0 * std::pow(static_cast<double>(m.sched.N + 1), expo) > qd * qd);

    auto m3 = select_modulus(AlphaSpec::sqrt_of(3), 3, true, 0.01);
    CHECK(m3.convergent.q == 2131);
    CHECK(m3.sched.N == 113);
    double q3 = m3.convergent.q.convert_to<double>();
    CHECK(q3 >= m3.sched.q_lo);
    CHECK(q3 <= m3.sched.q_hi);

    CHECK_THROWS_AS(select_modulus(AlphaSpec::parse("rat:355/113"), 2, true, 0.01), DomainError);
    CHECK_THROWS_AS(select_modulus(AlphaSpec::sqrt_of(2), 2, true, 0.01, 1000, 1500),
                    BudgetError);
}

TEST_CASE("rho inequalities hold for all k in [2,30]") {
    for (int k = 2; k <= 30; ++k)
        for (bool mono : {true, false}) {
            auto checks = verify_rho_inequalities(k, mono);
            REQUIRE(!checks.empty());
            for (const auto& c : checks) {
                INFO(c.name, " k=", k, " mono=", mono);
                CHECK(c.pass);
                CHECK(c.margin >= 0);
            }
        }
}

TEST_CASE("rho inequality worked examples") {
    auto c2 = verify_rho_inequalities(2, true);
    REQUIRE(c2.size() == 2);
    CHECK(c2[0].name == "rho_lt_2_7");
    CHECK(c2[1].name == "rho_lt_2_11");
    CHECK(c2[1].lhs == Rational(2, 13));
    CHECK(c2[1].rhs == Rational(2, 11));

    auto c3 = verify_rho_inequalities(3, true);
    // (2k + 1/2) rho = 0.65 <= 9/10
    bool found = false;
    for (const auto& c : c3)
        if (c.name == "twok_half_rho_le_3k_10") {
            found = true;
            CHECK(c.lhs == Rational(13, 20));
            CHECK(c.rhs == Rational(9, 10));
        }
    CHECK(found);

    auto c4 = verify_rho_inequalities(4, true);
    found = false;
    for (const auto& c : c4)
        if (c.name == "sec3_type1_margin") {
            found = true;
            // 0.0509875 * (5/2 - 3/8) = 0.10835... < 1/8
            CHECK(c.lhs.convert_to<double>() == doctest::Approx(0.108348).epsilon(1e-4));
            CHECK(c.rhs == Rational(1, 8));
        }
    CHECK(found);
}

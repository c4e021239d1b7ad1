#pragma once

#include "fracpoly/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracpoly {

// Leading coefficient of the polynomial under study. Three flavours:
// quadratic surd (p + r*sqrt(d))/s, a decimal literal with a stated
// precision, or an exact rational.
struct AlphaSpec {
    enum class Kind { Surd, Decimal, Rat };
    Kind kind = Kind::Surd;

    // surd
    Integer p = 0, r = 1, s = 1, d = 2;
    // decimal
    Rational decimal_value = 0;  // parsed literal, exact
    unsigned bits = 0;           // certified to +- 2^-bits
    // rational
    Rational rat_value = 0;

    static AlphaSpec sqrt_of(long long n);
    static AlphaSpec surd(Integer p, Integer r, Integer s, Integer d);
    static AlphaSpec decimal(const std::string& digits, unsigned bits);
    static AlphaSpec rational(const Rational& v);

    // Text syntax: sqrt:2, surd:(1+1*sqrt5)/2, dec:1.4142<bits=128>, rat:355/113
    static AlphaSpec parse(const std::string& text);

    bool is_irrational() const;
    real640 to_real() const;
    std::string str() const;
};

struct Convergent {
    Integer a;  // numerator
    Integer q;  // denominator, > 0
};

// Decimal continued fractions stop as soon as the certified interval
// straddles an integer; the convergents emitted so far are carried along.
struct CfPrecisionError : std::runtime_error {
    std::vector<Convergent> certified;
    explicit CfPrecisionError(std::vector<Convergent> c)
        : std::runtime_error("decimal precision exhausted while certifying the next partial quotient"),
          certified(std::move(c)) {}
};

std::vector<Convergent> cf_convergents(const AlphaSpec& alpha, const Integer& q_max);

long long j_invariant(int k, bool monomial);

Rational rho(int k, long long J);

struct ParamSchedule {
    long long N = 0;
    int k = 2;
    bool monomial = true;
    long long J = 0;
    Rational rho_value;
    double epsilon = 0, eta = 0;
    double L1 = 0, L = 0, delta = 0;
    double q_lo = 0, q_hi = 0;
    // L > N^(eps/7) L1 holds only for astronomically large N at small eps;
    // reported rather than enforced so desk-scale schedules stay usable.
    bool l_window_ok = false;
};

ParamSchedule schedule(long long N, int k, bool monomial, double epsilon,
                       std::optional<double> eta = std::nullopt);

struct ModulusSelection {
    Convergent convergent;
    ParamSchedule sched;
};

ModulusSelection select_modulus(const AlphaSpec& alpha, int k, bool monomial, double epsilon,
                                const Integer& q_min = 1000, const Integer& q_cap = 100000000);

struct InequalityCheck {
    std::string name;
    Rational lhs, rhs;
    bool strict = true;  // lhs < rhs vs lhs <= rhs
    bool pass = false;
    double margin = 0;  // rhs - lhs
};

std::vector<InequalityCheck> verify_rho_inequalities(int k, bool monomial);

}  // namespace fracpoly

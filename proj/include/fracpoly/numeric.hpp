#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace fracpoly {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Fixed-precision MPFR reals. Wide enough that k*log2(n_max) bits of
// cancellation in ||alpha n^k|| still leaves a comfortable margin.
using real192 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<192>>;
using real320 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<320>>;
using real640 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<640>>;
using real1280 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<1280>>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;

// Invalid input: CLI maps this to exit code 2.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Node/operation budget exhausted: CLI maps this to exit code 3.
struct BudgetError : std::runtime_error {
    double best_estimate = 0.0;
    double achieved_error = 0.0;
    BudgetError(const std::string& msg, double best, double achieved)
        : std::runtime_error(msg), best_estimate(best), achieved_error(achieved) {}
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested certification not achievable at the working precision.
struct PrecisionError : std::runtime_error {
    unsigned required_bits = 0;
    PrecisionError(const std::string& msg, unsigned bits)
        : std::runtime_error(msg), required_bits(bits) {}
};

// Exact nearest-integer distance for a rational argument, in [0, 1/2].
inline Rational frac_distance(const Rational& x) {
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    Integer r = num % den;
    if (r < 0) r += den;
    Integer other = den - r;
    return Rational(r < other ? r : other, den);
}

}  // namespace fracpoly

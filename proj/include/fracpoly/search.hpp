#pragma once

#include "fracpoly/numeric.hpp"
#include "fracpoly/numtheory.hpp"
#include "fracpoly/rational.hpp"
#include "fracpoly/sieve.hpp"

#include <vector>

namespace fracpoly {

// f(x) = alpha x^k + c_{k-1} x^(k-1) + ... + c_1 x + c_0 with an irrational
// leading coefficient, or g with the leading coefficient replaced by a
// convergent a/q. Lower coefficients are exact rationals or tracked reals.
struct FracPolynomial {
    int k = 2;
    bool rational_leading = false;
    AlphaSpec alpha;        // used when !rational_leading
    Convergent lead_ratio;  // used when rational_leading
    std::vector<Rational> lower_rat;  // c_0..c_{k-1}, when lower_exact
    std::vector<real640> lower_app;   // otherwise
    bool lower_exact = true;
    u64 n_max = 1000000;

    static FracPolynomial irrational(AlphaSpec alpha, int k,
                                     std::vector<Rational> lower = {}, u64 n_max = 1000000);
    static FracPolynomial rational(Convergent lead, int k, std::vector<Rational> lower = {},
                                   u64 n_max = 1000000);
    void validate() const;
};

struct FracResult {
    double value = 0;  // ||f(n)||, in [0, 1/2]
    double error = 0;  // certified absolute bound
    unsigned bits_used = 0;
};

// min_bits forces precision escalation (used for record re-verification).
FracResult fracpart(const FracPolynomial& f, u64 n, unsigned min_bits = 0);

// Exact ||g(n)|| for fully rational g; DomainError otherwise.
Rational fracpart_exact(const FracPolynomial& g, u64 n);

// A = {N/2 < n <= N : ||g(n)|| < 1/L1}, membership decided exactly.
SiftSet construct_A(u64 N, const ParamSchedule& sched, const FracPolynomial& g);

struct PrimeRecord {
    u64 p = 0;
    double fracpart = 0;
    double threshold = 0;   // p^-nu
    double normalized = 0;  // fracpart * p^nu, strictly decreasing along the list
    bool is_record = false;  // fracpart < p^-nu, re-verified at doubled precision
};

std::vector<PrimeRecord> prime_records(const FracPolynomial& f, double nu, u64 p_max);

struct DensityReport {
    u64 primes_in_A = 0;
    u64 primes_in_B = 0;
    double delta = 0;
    double two_delta_primes_in_B = 0;
    double ratio = 0;
};

DensityReport density_report(u64 N, const ParamSchedule& sched, const FracPolynomial& g);

}  // namespace fracpoly

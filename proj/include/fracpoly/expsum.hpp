#pragma once

#include "fracpoly/numeric.hpp"
#include "fracpoly/numtheory.hpp"
#include "fracpoly/rational.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace fracpoly {

// High-precision complex accumulator for exponential sums.
struct Cplx {
    real320 re{0}, im{0};

    double abs() const;
    std::complex<double> to_double() const;
    Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
    Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
    Cplx operator*(const Cplx& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
};

// e(theta) = exp(2 pi i theta); the rational overload reduces mod 1 exactly.
Cplx e_of(const Rational& theta);
Cplx e_of(const real320& theta);

// G(x) = u_1 x + ... + u_k x^k, no constant term.
struct IntPoly {
    std::vector<Integer> u;  // u[j] is the coefficient of x^(j+1)

    int degree() const { return static_cast<int>(u.size()); }
    bool degenerate() const { return u.empty() || u.back() == 0; }
    Integer eval(const Integer& x) const;
    Integer eval_mod(const Integer& x, const Integer& s) const;  // G(x) mod s, in [0,s)
};

// F(x) = c_1 x + ... + c_k x^k with either exact rational or tracked
// floating coefficients.
struct RealPoly {
    std::vector<Rational> rat;   // populated when exact
    std::vector<real320> app;    // always populated
    bool exact = false;
    unsigned precision = 320;

    int degree() const { return static_cast<int>(app.size()); }
    static RealPoly from_rationals(std::vector<Rational> coeffs);
    static RealPoly from_reals(std::vector<real320> coeffs);

    RealPoly negated() const;
    real320 eval(const real320& x) const;
};

// S(s, ell G) = sum_{v=1}^s e(ell G(v)/s), phases exact mod s.
Cplx complete_sum(u64 s, const IntPoly& G, const Integer& ell);

struct BoundReport {
    std::string name;
    double lhs = 0;
    double bound = 0;
    double ratio = 0;
    bool applicable = true;
};

// |s^-1 S(s, ell G)| against (s0/<s0,ell>)^(-1/k) (s1/<s1,ell>)^(-1/2)
// at constant 1, s = s0*s1 the squarefull/squarefree split.
BoundReport cochrane_check(u64 s, const IntPoly& G, u64 ell, int k);

struct Eq39Data {
    double N_over_Y = 0;
    double lead_dist = 0;  // |y^k a/q - u/s| with u = u_k (or u_1 via flag)
};

struct OscResult {
    Cplx value;
    double error = 0;  // certified
    u64 nodes = 0;
    std::optional<double> eq39_bound;
};

// int_A^B e(ell F(z)) dz by adaptive Gauss-Legendre panels.
OscResult oscillatory_integral(const RealPoly& F, double A, double B, u64 ell, double tol,
                               u64 max_nodes = 40000000,
                               const std::optional<Eq39Data>& eq39 = std::nullopt);

struct WeylResult {
    Cplx value;
    double error_bound = 0;
    u64 terms = 0;
};

// sum_{n=n_lo}^{n_hi} e(m f(n)); exact phase path for rational coefficients.
WeylResult weyl_sum(const RealPoly& f, i64 n_lo, i64 n_hi, const Integer& m);

struct ApproxResult {
    u64 s = 1;
    std::vector<Integer> u;
    std::vector<double> residuals;  // |s gamma_j - u_j|
    double score = 0;               // max_j residual_j * X^(j-1) * 2k^2 L
    bool satisfies_31 = false;      // score <= 1
    u64 gcd_tail = 1;               // <s, u_2, ..., u_k>
};

// Brute-force search over s <= s_max for the (3.1)-normalized best
// simultaneous approximation to gamma_1..gamma_k.
ApproxResult simultaneous_approx(const std::vector<real320>& gamma, double X, double L,
                                 u64 s_max);

struct Lemma7Result {
    double lhs = 0;
    double rhs_2k1 = 0;      // N^(2 eta) L s^(1-1/k)
    double rhs_general = 0;  // N^(2 eta) (L s^(1-1/k) + s)
    bool cond_31 = true;
    std::vector<double> per_ell;
};

// Eq. (3.2): sum over ell <= L of |weyl - s^-1 S(s,ellG) integral|, on the
// interval of integers (lo, hi]. n2eta supplies the N^(2 eta) factor.
Lemma7Result lemma7_error(const RealPoly& gamma, u64 s, const IntPoly& G, i64 lo, i64 hi,
                          u64 L, double n2eta = 1.0, double tol = 1e-13);

struct ExperimentReport {
    double value = 0;
    double bound = 0;
    double ratio = 0;
    u64 terms = 0;
    u64 ell_max = 0;
    bool range_ok = true;
    u64 diagonal_quadruples = 0;  // type II only
    u64 seed_a = 0, seed_b = 0;
};

// Lemma 8 left-hand side: sum_{ell<=L} sum_{y~Y} |sum_{n in I(y)} e(ell g(yn))|
// with I(y) = (N/2y, N/y], g = (a/q) x^k + dyadic lower coefficients from
// coeff_seed. Phases are exact integers mod q*2^32.
ExperimentReport type_I_experiment(const ParamSchedule& sched, const Convergent& conv, u64 Y,
                                   u64 coeff_seed, u64 op_cap = 200000000);

// Lemma 9 / 11 left-hand side with unimodular a_x, b_y from the seeds and
// the constraint N/2 < xy <= N.
ExperimentReport type_II_experiment(const ParamSchedule& sched, const Convergent& conv, u64 Y,
                                    u64 a_seed, u64 b_seed, u64 op_cap = 200000000);

// Quadruples (l1, y1, l2, y2) with l1 y1^k = l2 y2^k, l <= L, y in [y_lo, y_hi].
u64 count_diagonal_quadruples(u64 L, u64 y_lo, u64 y_hi, int k);

}  // namespace fracpoly

#pragma once

#include "fracpoly/numeric.hpp"
#include "fracpoly/numtheory.hpp"

#include <string>
#include <vector>

namespace fracpoly {

// The paper mixes two dyadic conventions; every counting loop takes a flag.
// OpenClosed is (Y, 2Y], ClosedOpen is [Y, 2Y).
enum class Interval { OpenClosed, ClosedOpen };

struct CountReport {
    std::string bound_name;
    u64 exact_count = 0;
    double bound_value = 0;
    double ratio = 0;
    bool applicable = true;
    bool hard_pass = true;  // meaningful only for constant-1 bounds

    static CountReport make(std::string name, u64 count, double bound, bool applicable = true) {
        CountReport r;
        r.bound_name = std::move(name);
        r.exact_count = count;
        r.bound_value = bound;
        r.ratio = (count == 0 || bound <= 0) ? 0.0 : static_cast<double>(count) / bound;
        r.applicable = applicable;
        return r;
    }
};

struct NkQuery {
    int k = 2;
    u64 Y = 1, D = 1;
    Rational Z = 2;
    u64 s = 1;
    i64 a = 1;
    u64 q = 2;
    Interval conv = Interval::OpenClosed;

    void validate() const;
};

// Count of y in the dyadic block at Y with gcd(y,q) <= D and
// ||s a y^k / q|| < 1/Z, decided in exact rational arithmetic.
u64 count_Nk(const NkQuery& query);

// One report per applicable lemma bound, constants taken as 1.
// N enters only through the k=3 bound.
std::vector<CountReport> check_Nk_bounds(const NkQuery& query, double eta, u64 N);

struct ASetQuery {
    u64 S0 = 1, S1 = 1;
    u64 d0 = 1, d1 = 1;

    void validate() const;
};

// Members s = s0*s1: s0 squarefull in (S0,2S0], s1 squarefree in (S1,2S1],
// coprime, d0|s0, d1|s1. Sorted; unique by the squarefull/squarefree split.
std::vector<u64> enumerate_A(const ASetQuery& query, u64 cap = 100000000);

CountReport check_lemma4(const ASetQuery& query, u64 N, double eta, u64 cap = 100000000);

struct MkQuery {
    int k = 2;
    u64 Y = 1;
    Rational Z = 2;
    u64 S0 = 1, S1 = 1;
    i64 a = 1;
    u64 q = 2;
    u64 gcd_cap = 1;
    Interval conv = Interval::OpenClosed;
    u64 enum_cap = 100000000;

    void validate() const;
};

struct MkCount {
    u64 count = 0;
    bool a_set_empty = false;
};

MkCount count_Mk(const MkQuery& query);

struct MkBounds {
    std::vector<CountReport> reports;
    bool cond_2_5 = false;  // 4 S0 S1 N^(k rho) < q
};

MkBounds check_Mk_bounds(const MkQuery& query, double eta, u64 N, double rho);

u64 count_congruence(i64 u, u64 d, u64 L, u64 B);

// Lemma bound with implied constant exactly 1: pass/fail is asserted.
CountReport check_lemma6(i64 u, u64 d, u64 L, u64 B);

struct PairQuery {
    u64 W = 2;
    Rational X = 2;
    u64 Y = 2;
    i64 a = 1;
    u64 q = 2;
    Interval conv = Interval::OpenClosed;

    void validate() const;
};

// Ordered pairs y1 != y2 in the dyadic block with
// min_{s<=W} ||a (y1^2-y2^2) s / q|| < 1/X.
u64 count_pairs_quadratic(const PairQuery& query);

CountReport check_lemma10(const PairQuery& query, double eta);

}  // namespace fracpoly

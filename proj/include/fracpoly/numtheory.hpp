#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace fracpoly {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// a mod m with a possibly negative, result in [0, m).
inline u64 modnorm(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Trial-division factorization; fine for the desk-scale inputs used here.
std::vector<std::pair<u64, int>> factorize(u64 n);

bool is_squarefree(u64 n);
bool is_squarefull(u64 n);

// Unique split s = s0*s1 with s0 squarefull, s1 squarefree, gcd(s0,s1)=1.
std::pair<u64, u64> squarefull_split(u64 s);

// All primes <= n, simple sieve.
std::vector<u64> primes_up_to(u64 n);

// pi(hi) - pi(lo): primes p with lo < p <= hi, segmented.
u64 count_primes_in(u64 lo, u64 hi);

// Squarefull numbers in (lo, hi], sorted, via the a^2*b^3 parameterization
// (b squarefree).
std::vector<u64> squarefull_in(u64 lo, u64 hi);

// Psi(x, y): number of n <= x with all prime factors <= y.
u64 smooth_count(u64 x, u64 y);

}  // namespace fracpoly

#include "fracpoly/numtheory.hpp"

#include <algorithm>

namespace fracpoly {

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(u64 n) {
    for (auto& [p, e] : factorize(n))
        if (e >= 2) return false;
    return true;
}

bool is_squarefull(u64 n) {
    if (n == 1) return true;
    for (auto& [p, e] : factorize(n))
        if (e < 2) return false;
    return true;
}

std::pair<u64, u64> squarefull_split(u64 s) {
    u64 s0 = 1, s1 = 1;
    for (auto& [p, e] : factorize(s)) {
        u64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (e >= 2) s0 *= pe; else s1 *= pe;
    }
    return {s0, s1};
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> primes;
    if (n < 2) return primes;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            for (u64 j = i * i; j <= n; j += i) comp[j] = true;
        }
    }
    return primes;
}

u64 count_primes_in(u64 lo, u64 hi) {
    if (hi <= lo) return 0;
    const u64 seg = 1u << 20;
    auto base = primes_up_to(isqrt_u64(hi));
    u64 count = 0;
    std::vector<bool> comp;
    for (u64 start = lo + 1; start <= hi; start += seg) {
        u64 end = std::min(hi, start + seg - 1);
        comp.assign(end - start + 1, false);
        for (u64 p : base) {
            if (p * p > end) break;
            u64 first = std::max(p * p, (start + p - 1) / p * p);
            for (u64 m = first; m <= end; m += p) comp[m - start] = true;
        }
        for (u64 v = start; v <= end; ++v)
            if (v >= 2 && !comp[v - start]) ++count;
    }
    return count;
}

std::vector<u64> squarefull_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 b = 1; b * b * b <= hi; ++b) {
        if (!is_squarefree(b)) continue;
        u64 b3 = b * b * b;
        for (u64 a = 1; a * a <= hi / b3; ++a) {
            u64 v = a * a * b3;
            if (v > lo && v <= hi) out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {
u64 smooth_count_rec(u64 x, const std::vector<u64>& primes, std::size_t idx) {
    // n = product over primes[idx..] with value <= x, counting 1 as well.
    u64 count = 1;
    for (std::size_t i = idx; i < primes.size(); ++i) {
        if (primes[i] > x) break;
        count += smooth_count_rec(x / primes[i], primes, i);
    }
    return count;
}
}  // namespace

u64 smooth_count(u64 x, u64 y) {
    if (x == 0) return 0;
    auto primes = primes_up_to(std::min(x, y));
    return smooth_count_rec(x, primes, 0);
}

}  // namespace fracpoly

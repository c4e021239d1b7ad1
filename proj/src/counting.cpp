#include "fracpoly/counting.hpp"

#include <algorithm>
#include <cmath>

namespace fracpoly {

namespace {

struct Block {
    u64 lo, hi;  // inclusive
};

Block dyadic(u64 Y, Interval conv) {
    if (conv == Interval::OpenClosed) return {Y + 1, 2 * Y};
    return {Y, 2 * Y - 1};
}

// ||r/q|| < 1/Z, r in [0,q), exact: min(r, q-r) * Z < q.
bool small_frac(u64 r, u64 q, const Rational& Z) {
    u64 m = std::min(r, q - r);
    if (r == 0) m = 0;
    return Integer(m) * boost::multiprecision::numerator(Z) <
           Integer(q) * boost::multiprecision::denominator(Z);
}

}  // namespace

void NkQuery::validate() const {
    if (k < 2) throw DomainError("k >= 2 required");
    if (!(Y >= 1 && Y < q)) throw DomainError("1 <= Y < q required");
    if (!(D >= 1)) throw DomainError("D >= 1 required");
    if (Z < 2) throw DomainError("Z >= 2 required");
    if (!(s >= 1 && s < q)) throw DomainError("1 <= s < q required");
    if (std::gcd(modnorm(a, q), q) != 1) throw DomainError("gcd(a,q) = 1 required");
}

u64 count_Nk(const NkQuery& query) {
    query.validate();
    u64 sa = mulmod(query.s % query.q, modnorm(query.a, query.q), query.q);
    auto [lo, hi] = dyadic(query.Y, query.conv);
    u64 count = 0;
    for (u64 y = lo; y <= hi; ++y) {
        if (std::gcd(y, query.q) > query.D) continue;
        u64 r = mulmod(sa, powmod(y, query.k, query.q), query.q);
        if (small_frac(r, query.q, query.Z)) ++count;
    }
    return count;
}

std::vector<CountReport> check_Nk_bounds(const NkQuery& query, double eta, u64 N) {
    u64 count = count_Nk(query);
    double q = static_cast<double>(query.q);
    double Y = static_cast<double>(query.Y);
    double Z = query.Z.convert_to<double>();
    double Nd = static_cast<double>(N);
    std::vector<CountReport> out;

    bool l1i_ok = query.D == 1;
    out.push_back(CountReport::make("lemma1i", count, std::pow(q, 1 + eta) / Z, l1i_ok));

    double sDk = static_cast<double>(query.s) * std::pow(static_cast<double>(query.D), query.k);
    out.push_back(
        CountReport::make("lemma1ii", count, std::pow(q, 1 + 2 * eta) / Z, sDk < q));

    if (query.k == 3) {
        double g = static_cast<double>(std::gcd(modnorm(static_cast<i64>(query.s), query.q), query.q));
        double bound = std::sqrt(Y) +
                       std::pow(Nd, eta) * (Y * std::pow(Z, -0.25) + Y * std::pow(g / q, 0.25) +
                                            std::pow(Y, 0.25) * std::pow(q, 0.25) * std::pow(Z, -0.25));
        out.push_back(CountReport::make("lemma2", count, bound, true));
    }
    if (query.k == 2) {
        double core = (Y + std::sqrt(q)) / std::sqrt(Z);
        out.push_back(CountReport::make("lemma3i", count, std::pow(q, eta) * core, query.D == 1));
        double sD2 = static_cast<double>(query.s) * query.D * query.D;
        out.push_back(CountReport::make("lemma3ii", count, std::pow(q, 2 * eta) * core, sD2 < q));
    }
    return out;
}

void ASetQuery::validate() const {
    if (S0 < 1 || S1 < 1) throw DomainError("S0, S1 >= 1 required");
    if (d0 < 1 || d1 < 1) throw DomainError("d0, d1 >= 1 required");
}

std::vector<u64> enumerate_A(const ASetQuery& query, u64 cap) {
    query.validate();
    if (4 * query.S0 * query.S1 > cap)
        throw BudgetError("A-set enumeration range exceeds cap");
    std::vector<u64> s0s = squarefull_in(query.S0, 2 * query.S0);
    std::vector<u64> out;
    for (u64 s1 = query.S1 + 1; s1 <= 2 * query.S1; ++s1) {
        if (s1 % query.d1 != 0 || !is_squarefree(s1)) continue;
        for (u64 s0 : s0s) {
            if (s0 % query.d0 != 0) continue;
            if (std::gcd(s0, s1) != 1) continue;
            out.push_back(s0 * s1);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CountReport check_lemma4(const ASetQuery& query, u64 N, double eta, u64 cap) {
    u64 count = enumerate_A(query, cap).size();
    double bound = std::pow(static_cast<double>(N), eta) *
                   std::sqrt(static_cast<double>(query.S0)) * static_cast<double>(query.S1) /
                   (std::sqrt(static_cast<double>(query.d0)) * static_cast<double>(query.d1));
    return CountReport::make("lemma4", count, bound);
}

void MkQuery::validate() const {
    if (k < 2) throw DomainError("k >= 2 required");
    if (!(Y >= 1 && Y < q)) throw DomainError("1 <= Y < q required");
    if (Z < 2) throw DomainError("Z >= 2 required");
    if (gcd_cap < 1) throw DomainError("gcd_cap >= 1 required");
    if (std::gcd(modnorm(a, q), q) != 1) throw DomainError("gcd(a,q) = 1 required");
}

MkCount count_Mk(const MkQuery& query) {
    query.validate();
    auto svals = enumerate_A({query.S0, query.S1, 1, 1}, query.enum_cap);
    MkCount out;
    if (svals.empty()) {
        out.a_set_empty = true;
        return out;
    }
    u64 an = modnorm(query.a, query.q);
    std::vector<u64> sa;
    sa.reserve(svals.size());
    for (u64 s : svals) sa.push_back(mulmod(s % query.q, an, query.q));
    auto [lo, hi] = dyadic(query.Y, query.conv);
    for (u64 y = lo; y <= hi; ++y) {
        if (std::gcd(y, query.q) > query.gcd_cap) continue;
        u64 yk = powmod(y, query.k, query.q);
        for (u64 c : sa) {
            if (small_frac(mulmod(c, yk, query.q), query.q, query.Z)) {
                ++out.count;
                break;
            }
        }
    }
    return out;
}

MkBounds check_Mk_bounds(const MkQuery& query, double eta, u64 N, double rho) {
    MkCount mc = count_Mk(query);
    double q = static_cast<double>(query.q);
    double Y = static_cast<double>(query.Y);
    double Z = query.Z.convert_to<double>();
    double Nd = static_cast<double>(N);
    double S0 = static_cast<double>(query.S0), S1 = static_cast<double>(query.S1);
    double common = std::pow(Nd, 3 * eta) * std::sqrt(S0) * S1;

    MkBounds out;
    out.cond_2_5 = 4.0 * S0 * S1 * std::pow(Nd, query.k * rho) < q;
    out.reports.push_back(CountReport::make("eq2.4", mc.count, common * q / Z));
    if (query.k == 2)
        out.reports.push_back(
            CountReport::make("eq2.6", mc.count, common * (Y + std::sqrt(q)) / std::sqrt(Z)));
    if (query.k == 3)
        out.reports.push_back(CountReport::make(
            "eq2.8", mc.count,
            common * (std::sqrt(Y) + Y * std::pow(Z, -0.25) +
                      std::pow(Y, 0.25) * std::pow(q, 0.25) * std::pow(Z, -0.25))));
    return out;
}

u64 count_congruence(i64 u, u64 d, u64 L, u64 B) {
    if (d < 1 || L < 1 || B < 1) throw DomainError("positive d, L, B required");
    u64 un = modnorm(u, d);
    u64 count = 0;
    for (u64 ell = 1; ell <= L; ++ell) {
        u64 r = mulmod(ell % d, un, d);
        u64 b0 = (r == 0) ? d : r;  // smallest b >= 1 with b = r (mod d)
        if (b0 <= B) count += (B - b0) / d + 1;
    }
    return count;
}

CountReport check_lemma6(i64 u, u64 d, u64 L, u64 B) {
    u64 count = count_congruence(u, d, L, B);
    double bound = static_cast<double>(std::min(L, B)) +
                   static_cast<double>(B) * static_cast<double>(L) / static_cast<double>(d);
    auto r = CountReport::make("lemma6", count, bound);
    r.hard_pass = static_cast<double>(count) <= bound;
    return r;
}

void PairQuery::validate() const {
    if (W <= 1 || X <= 1 || Y <= 1) throw DomainError("W, X, Y > 1 required");
    if (std::gcd(modnorm(a, q), q) != 1) throw DomainError("gcd(a,q) = 1 required");
}

u64 count_pairs_quadratic(const PairQuery& query) {
    query.validate();
    auto [lo, hi] = dyadic(query.Y, query.conv);
    u64 an = modnorm(query.a, query.q);
    u64 count = 0;
    for (u64 y1 = lo; y1 <= hi; ++y1) {
        for (u64 y2 = lo; y2 <= hi; ++y2) {
            if (y1 == y2) continue;
            i64 diff = static_cast<i64>(y1 * y1) - static_cast<i64>(y2 * y2);
            u64 base = mulmod(an, modnorm(diff, query.q), query.q);
            u64 r = 0;
            bool hit = false;
            for (u64 s = 1; s <= query.W; ++s) {
                r = (r + base) % query.q;  // r = base * s mod q
                if (small_frac(r, query.q, query.X)) {
                    hit = true;
                    break;
                }
            }
            if (hit) ++count;
        }
    }
    return count;
}

CountReport check_lemma10(const PairQuery& query, double eta) {
    u64 count = count_pairs_quadratic(query);
    double W = static_cast<double>(query.W), Y = static_cast<double>(query.Y);
    double q = static_cast<double>(query.q);
    double X = query.X.convert_to<double>();
    double bound = (W * Y * Y / q + 1.0) * (1.0 + q / X) * std::pow(W * Y, eta);
    return CountReport::make("lemma10", count, bound);
}

}  // namespace fracpoly

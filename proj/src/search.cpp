#include "fracpoly/search.hpp"

#include <algorithm>
#include <cmath>

namespace fracpoly {

FracPolynomial FracPolynomial::irrational(AlphaSpec alpha, int k, std::vector<Rational> lower,
                                          u64 n_max) {
    FracPolynomial f;
    f.k = k;
    f.rational_leading = false;
    f.alpha = std::move(alpha);
    f.lower_rat = std::move(lower);
    f.lower_rat.resize(k, Rational(0));
    f.n_max = n_max;
    f.validate();
    return f;
}

FracPolynomial FracPolynomial::rational(Convergent lead, int k, std::vector<Rational> lower,
                                        u64 n_max) {
    FracPolynomial f;
    f.k = k;
    f.rational_leading = true;
    f.lead_ratio = std::move(lead);
    f.lower_rat = std::move(lower);
    f.lower_rat.resize(k, Rational(0));
    f.n_max = n_max;
    f.validate();
    return f;
}

void FracPolynomial::validate() const {
    if (k < 1) throw DomainError("degree k >= 1 required");
    if (rational_leading && lead_ratio.q <= 0) throw DomainError("q > 0 required");
    if (lower_exact && lower_rat.size() != static_cast<std::size_t>(k))
        throw DomainError("expected k lower coefficients c_0..c_{k-1}");
    if (!lower_exact && lower_app.size() != static_cast<std::size_t>(k))
        throw DomainError("expected k lower coefficients c_0..c_{k-1}");
}

Rational fracpart_exact(const FracPolynomial& g, u64 n) {
    g.validate();
    if (!g.rational_leading || !g.lower_exact)
        throw DomainError("exact fracpart requires fully rational coefficients");
    Integer ni(n);
    Integer nk = 1;
    Rational acc = 0;
    for (int j = 0; j < g.k; ++j) {
        acc += g.lower_rat[j] * Rational(nk);
        nk *= ni;
    }
    acc += Rational(g.lead_ratio.a * nk, g.lead_ratio.q);
    return frac_distance(acc);
}

namespace {

template <class Real>
Real alpha_at(const AlphaSpec& a) {
    switch (a.kind) {
        case AlphaSpec::Kind::Surd:
            return (Real(a.p) + Real(a.r) * sqrt(Real(a.d))) / Real(a.s);
        case AlphaSpec::Kind::Decimal:
            return Real(a.decimal_value);
        case AlphaSpec::Kind::Rat:
        default:
            return Real(a.rat_value);
    }
}

template <class Real>
FracResult fracpart_impl(const FracPolynomial& f, u64 n, unsigned bits) {
    Integer ni(n);
    Integer nk = boost::multiprecision::pow(ni, static_cast<unsigned>(f.k));
    Real v = alpha_at<Real>(f.alpha) * Real(nk);
    Integer np = 1;
    for (int j = 0; j < f.k; ++j) {
        if (f.lower_exact)
            v += Real(f.lower_rat[j]) * Real(np);
        else
            v += f.lower_app[j].template convert_to<Real>() * Real(np);
        np *= ni;
    }
    Real t = v - round(v);
    FracResult out;
    out.value = std::abs(t.template convert_to<double>());
    out.bits_used = bits;
    // relative error 2^-bits per operation, k+4 operations on magnitude |v|
    double mag = std::max(1.0, std::abs(v.template convert_to<double>()));
    out.error = (f.k + 4) * mag * std::ldexp(1.0, -static_cast<int>(bits));
    return out;
}

}  // namespace

FracResult fracpart(const FracPolynomial& f, u64 n, unsigned min_bits) {
    f.validate();
    if (n > f.n_max) throw DomainError("n exceeds the declared n_max");
    if (f.rational_leading && f.lower_exact) {
        FracResult out;
        out.value = fracpart_exact(f, n).convert_to<double>();
        out.error = 0;
        out.bits_used = 0;
        return out;
    }
    double lg = std::log2(std::max<double>(2.0, static_cast<double>(n)));
    unsigned needed = static_cast<unsigned>(std::ceil(f.k * lg)) + 96;
    needed = std::max(needed, min_bits);
    if (f.alpha.kind == AlphaSpec::Kind::Decimal) {
        // a decimal literal certified to 2^-bits cannot support more than
        // bits - k*log2(n) fractional bits regardless of working precision
        double floor_err = std::ldexp(1.0, -static_cast<int>(f.alpha.bits)) *
                           std::pow(static_cast<double>(n), f.k);
        if (floor_err > std::ldexp(1.0, -32))
            throw PrecisionError("decimal leading coefficient too coarse for certification",
                                 static_cast<unsigned>(std::ceil(f.k * lg)) + 32);
    }
    if (needed <= 640) return fracpart_impl<real640>(f, n, 640);
    if (needed <= 1280) return fracpart_impl<real1280>(f, n, 1280);
    throw PrecisionError("degree/range combination exceeds available precision", needed);
}

SiftSet construct_A(u64 N, const ParamSchedule& sched, const FracPolynomial& g) {
    g.validate();
    if (!g.rational_leading || !g.lower_exact)
        throw DomainError("construct_A requires a fully rational g");
    if (static_cast<long long>(N) != sched.N) throw DomainError("N must match the schedule");
    Rational delta(sched.L1 >= 1 ? Rational(1) / Rational(sched.L1) : Rational(1));
    SiftSet out;
    out.label = "A";
    for (u64 n = N / 2 + 1; n <= N; ++n)
        if (fracpart_exact(g, n) < delta) out.elements.push_back(n);
    return out;
}

namespace {

template <class Fn>
void for_primes_up_to(u64 p_max, Fn&& fn) {
    const u64 seg = 1 << 20;
    auto base = primes_up_to(isqrt_u64(p_max));
    for (u64 lo = 2; lo <= p_max; lo += seg) {
        u64 hi = std::min(p_max, lo + seg - 1);
        std::vector<bool> comp(hi - lo + 1, false);
        for (u64 p : base) {
            if (p * p > hi) break;
            u64 first = std::max(p * p, (lo + p - 1) / p * p);
            for (u64 m = first; m <= hi; m += p) comp[m - lo] = true;
        }
        for (u64 n = std::max<u64>(lo, 2); n <= hi; ++n)
            if (!comp[n - lo]) fn(n);
    }
}

}  // namespace

std::vector<PrimeRecord> prime_records(const FracPolynomial& f, double nu, u64 p_max) {
    if (!(nu > 0 && nu < 1)) throw DomainError("0 < nu < 1 required");
    if (p_max > 1000000000ull) throw DomainError("p_max capped at 1e9");
    std::vector<PrimeRecord> out;
    double best = std::numeric_limits<double>::infinity();
    for_primes_up_to(p_max, [&](u64 p) {
        auto r = fracpart(f, p);
        double pd = static_cast<double>(p);
        double norm = r.value * std::pow(pd, nu);
        if (norm < best) {
            best = norm;
            PrimeRecord rec;
            rec.p = p;
            rec.fracpart = r.value;
            rec.threshold = std::pow(pd, -nu);
            rec.normalized = norm;
            rec.is_record = r.value < rec.threshold;
            if (rec.is_record && r.error > 0 && r.bits_used < 1280) {
                // re-verify the inequality at doubled working precision
                auto hi = fracpart(f, p, 2 * r.bits_used);
                rec.is_record = hi.value < rec.threshold;
            }
            out.push_back(rec);
        }
    });
    return out;
}

DensityReport density_report(u64 N, const ParamSchedule& sched, const FracPolynomial& g) {
    SiftSet A = construct_A(N, sched, g);
    DensityReport rep;
    rep.delta = sched.delta;
    for (u64 n : A.elements) {
        bool prime = n >= 2;
        for (u64 d = 2; d * d <= n && prime; ++d)
            if (n % d == 0) prime = false;
        if (prime) ++rep.primes_in_A;
    }
    rep.primes_in_B = count_primes_in(N / 2, N);
    rep.two_delta_primes_in_B = 2.0 * rep.delta * static_cast<double>(rep.primes_in_B);
    rep.ratio = rep.two_delta_primes_in_B > 0
                    ? static_cast<double>(rep.primes_in_A) / rep.two_delta_primes_in_B
                    : 0.0;
    return rep;
}

}  // namespace fracpoly

#include "fracpoly/expsum.hpp"

#include "fracpoly/prng.hpp"
#include "fracpoly/quad.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace fracpoly {

namespace {

const real320& two_pi320() {
    static const real320 v = 8 * atan(real320(1));
    return v;
}

double hypot2(double re, double im) { return std::sqrt(re * re + im * im); }

}  // namespace

double Cplx::abs() const {
    return sqrt(re * re + im * im).convert_to<double>();
}

std::complex<double> Cplx::to_double() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
}

Cplx e_of(const Rational& theta) {
    Integer num = boost::multiprecision::numerator(theta);
    Integer den = boost::multiprecision::denominator(theta);
    Integer r = num % den;
    if (r < 0) r += den;
    real320 t = real320(r) / real320(den);
    real320 ang = t * two_pi320();
    return {cos(ang), sin(ang)};
}

Cplx e_of(const real320& theta) {
    // nearest-integer reduction keeps negation exact: e_of(-t) = conj(e_of(t))
    real320 t = theta - round(theta);
    real320 ang = t * two_pi320();
    return {cos(ang), sin(ang)};
}

Integer IntPoly::eval(const Integer& x) const {
    Integer acc = 0;
    for (auto it = u.rbegin(); it != u.rend(); ++it) acc = acc * x + *it;
    return acc * x;  // no constant term
}

Integer IntPoly::eval_mod(const Integer& x, const Integer& s) const {
    Integer xm = x % s;
    if (xm < 0) xm += s;
    Integer acc = 0;
    for (auto it = u.rbegin(); it != u.rend(); ++it) acc = (acc * xm + *it) % s;
    acc = acc * xm % s;
    if (acc < 0) acc += s;
    return acc;
}

RealPoly RealPoly::from_rationals(std::vector<Rational> coeffs) {
    RealPoly p;
    p.exact = true;
    p.rat = std::move(coeffs);
    p.app.reserve(p.rat.size());
    for (const auto& c : p.rat) p.app.push_back(real320(c));
    return p;
}

RealPoly RealPoly::from_reals(std::vector<real320> coeffs) {
    RealPoly p;
    p.exact = false;
    p.app = std::move(coeffs);
    return p;
}

RealPoly RealPoly::negated() const {
    RealPoly p = *this;
    for (auto& c : p.rat) c = -c;
    for (auto& c : p.app) c = -c;
    return p;
}

real320 RealPoly::eval(const real320& x) const {
    real320 acc = 0;
    for (auto it = app.rbegin(); it != app.rend(); ++it) acc = acc * x + *it;
    return acc * x;
}

Cplx complete_sum(u64 s, const IntPoly& G, const Integer& ell) {
    if (s < 1) throw DomainError("s >= 1 required");
    Cplx sum;
    Integer si = s;
    for (u64 v = 1; v <= s; ++v) {
        Integer phase = G.eval_mod(Integer(v), si) * ell % si;
        Cplx t = e_of(Rational(phase, si));
        sum.re += t.re;
        sum.im += t.im;
    }
    return sum;
}

BoundReport cochrane_check(u64 s, const IntPoly& G, u64 ell, int k) {
    if (k < 1) throw DomainError("k >= 1 required");
    Cplx S = complete_sum(s, G, Integer(ell));
    auto [s0, s1] = squarefull_split(s);
    double lhs = S.abs() / static_cast<double>(s);
    double b0 = std::pow(static_cast<double>(s0) / static_cast<double>(std::gcd(s0, ell)),
                         -1.0 / k);
    double b1 = std::pow(static_cast<double>(s1) / static_cast<double>(std::gcd(s1, ell)), -0.5);
    BoundReport rep;
    rep.name = "eq3.8";
    rep.lhs = lhs;
    rep.bound = b0 * b1;
    rep.ratio = rep.bound > 0 ? lhs / rep.bound : 0.0;
    return rep;
}

namespace {

// Adaptive GL7/GL15 on a complex-valued integrand given as f(z) -> (re, im).
template <class F>
std::complex<double> adaptive_gl_complex(const F& f, double a, double b, double tol,
                                         double& cert, u64& nodes, u64 max_nodes) {
    auto panel = [&](const GLRule& r, double sa, double sb) {
        double mid = 0.5 * (sa + sb), half = 0.5 * (sb - sa);
        std::complex<double> sum{0, 0};
        for (std::size_t i = 0; i < r.x.size(); ++i) sum += f(mid + half * r.x[i]) * r.w[i];
        nodes += r.x.size();
        return sum * half;
    };
    struct Seg {
        double a, b, tol;
    };
    std::vector<Seg> work{{a, b, tol}};
    std::complex<double> total{0, 0};
    while (!work.empty()) {
        auto [sa, sb, stol] = work.back();
        work.pop_back();
        auto coarse = panel(gl7(), sa, sb);
        auto fine = panel(gl15(), sa, sb);
        double err = std::abs(fine - coarse);
        // second clause: double-precision noise floor, no point splitting below it
        if (err <= stol || err <= 1e-14 * (sb - sa) || (sb - sa) < 1e-13) {
            total += fine;
            cert += err;
        } else {
            if (nodes > max_nodes)
                throw BudgetError("oscillatory integral node budget exhausted",
                                  std::abs(total + fine), cert + err);
            double m = 0.5 * (sa + sb);
            work.push_back({sa, m, stol / 2});
            work.push_back({m, sb, stol / 2});
        }
    }
    return total;
}

}  // namespace

OscResult oscillatory_integral(const RealPoly& F, double A, double B, u64 ell, double tol,
                               u64 max_nodes, const std::optional<Eq39Data>& eq39) {
    if (!(B > A)) throw DomainError("B > A required");
    if (!(tol > 0)) throw DomainError("tol > 0 required");
    OscResult out;
    int k = F.degree();
    if (eq39) {
        double prod = static_cast<double>(ell) * eq39->lead_dist;
        out.eq39_bound = prod > 0 ? std::min(eq39->N_over_Y, std::pow(prod, -1.0 / k))
                                  : eq39->N_over_Y;
    }

    bool zero = F.exact;
    if (zero)
        for (const auto& c : F.rat)
            if (c != 0) { zero = false; break; }
    if (zero || k == 0) {
        out.value = {real320(B) - real320(A), real320(0)};
        out.error = 0;
        return out;
    }

    real320 ellr(ell);
    auto f = [&](double z) -> std::complex<double> {
        Cplx t = e_of(ellr * F.eval(real320(z)));
        return t.to_double();
    };
    double cert = 0;
    auto v = adaptive_gl_complex(f, A, B, tol, cert, out.nodes, max_nodes);
    out.value = {real320(v.real()), real320(v.imag())};
    out.error = cert + 1e-15 * (B - A);
    return out;
}

WeylResult weyl_sum(const RealPoly& f, i64 n_lo, i64 n_hi, const Integer& m) {
    if (n_hi < n_lo) throw DomainError("empty interval");
    WeylResult out;
    out.terms = static_cast<u64>(n_hi - n_lo + 1);
    const double eps = std::ldexp(1.0, -300);
    if (f.exact) {
        for (i64 n = n_lo; n <= n_hi; ++n) {
            Rational acc = 0;
            Integer ni(n);
            for (auto it = f.rat.rbegin(); it != f.rat.rend(); ++it) acc = acc * ni + *it;
            acc *= ni;
            Cplx t = e_of(Rational(acc * m));
            out.value.re += t.re;
            out.value.im += t.im;
        }
        out.error_bound = static_cast<double>(out.terms) * eps;
        return out;
    }
    real320 mr(m);
    double max_phase = 1.0;
    for (i64 n = n_lo; n <= n_hi; ++n) {
        real320 phase = mr * f.eval(real320(n));
        max_phase = std::max(max_phase, std::abs(phase.convert_to<double>()));
        Cplx t = e_of(phase);
        out.value.re += t.re;
        out.value.im += t.im;
    }
    out.error_bound = static_cast<double>(out.terms) * kTwoPi * max_phase * eps;
    return out;
}

ApproxResult simultaneous_approx(const std::vector<real320>& gamma, double X, double L,
                                 u64 s_max) {
    if (s_max < 1) throw DomainError("s_max >= 1 required");
    if (gamma.empty()) throw DomainError("at least one coefficient required");
    const int k = static_cast<int>(gamma.size());
    const double norm = 2.0 * k * k * L;

    ApproxResult best;
    best.score = std::numeric_limits<double>::infinity();
    for (u64 s = 1; s <= s_max; ++s) {
        double score = 0;
        std::vector<Integer> u(k);
        std::vector<double> res(k);
        double xpow = 1.0;
        for (int j = 0; j < k; ++j) {
            real320 t = gamma[j] * s;
            Integer uj = boost::multiprecision::round(t).convert_to<Integer>();
            double r = abs(t - real320(uj)).convert_to<double>();
            u[j] = uj;
            res[j] = r;
            score = std::max(score, r * xpow * norm);
            xpow *= X;
        }
        if (score < best.score) {
            best.s = s;
            best.u = std::move(u);
            best.residuals = std::move(res);
            best.score = score;
        }
    }

    Integer g = best.s;
    for (const auto& uj : best.u) g = boost::multiprecision::gcd(g, uj);
    if (g > 1) {
        u64 gv = g.convert_to<u64>();
        best.s /= gv;
        for (auto& uj : best.u) uj /= g;
        for (auto& r : best.residuals) r /= static_cast<double>(gv);
        best.score /= static_cast<double>(gv);
    }
    Integer tail = best.s;
    for (int j = 1; j < k; ++j) tail = boost::multiprecision::gcd(tail, best.u[j]);
    best.gcd_tail = tail.convert_to<u64>();
    best.satisfies_31 = best.score <= 1.0;
    return best;
}

Lemma7Result lemma7_error(const RealPoly& gamma, u64 s, const IntPoly& G, i64 lo, i64 hi,
                          u64 L, double n2eta, double tol) {
    const int k = G.degree();
    if (k < 1 || gamma.degree() != k) throw DomainError("gamma and G must share a degree k >= 1");
    if (!(hi > lo)) throw DomainError("empty interval");
    if (s < 1 || L < 1) throw DomainError("s, L >= 1 required");

    Lemma7Result out;

    // (3.1) at X = hi: |s gamma_j - u_j| <= (2k^2 L)^-1 X^(1-j)
    {
        double X = static_cast<double>(hi);
        double lim = 1.0 / (2.0 * k * k * static_cast<double>(L));
        for (int j = 1; j <= k; ++j) {
            real320 r = abs(gamma.app[j - 1] * s - real320(G.u[j - 1]));
            if (r.convert_to<double>() > lim * std::pow(X, 1 - j) * (1 + 1e-12))
                out.cond_31 = false;
        }
    }

    // beta_j = gamma_j - u_j/s
    RealPoly F;
    bool fzero = false;
    if (gamma.exact) {
        std::vector<Rational> beta(k);
        fzero = true;
        for (int j = 0; j < k; ++j) {
            beta[j] = gamma.rat[j] - Rational(G.u[j], Integer(s));
            if (beta[j] != 0) fzero = false;
        }
        F = RealPoly::from_rationals(std::move(beta));
    } else {
        std::vector<real320> beta(k);
        real320 sr(s);
        for (int j = 0; j < k; ++j) beta[j] = gamma.app[j] - real320(G.u[j]) / sr;
        F = RealPoly::from_reals(std::move(beta));
    }

    real320 lhs = 0;
    real320 len = real320(hi) - real320(lo);
    for (u64 ell = 1; ell <= L; ++ell) {
        Cplx W = weyl_sum(gamma, lo + 1, hi, Integer(ell)).value;
        Cplx S = complete_sum(s, G, Integer(ell));
        Cplx I;
        if (fzero) {
            I = {len, real320(0)};
        } else {
            double itol = std::max(tol, 2e-14 * static_cast<double>(hi - lo));
            auto r = oscillatory_integral(F, static_cast<double>(lo), static_cast<double>(hi),
                                          ell, itol);
            I = r.value;
        }
        Cplx main = S * I;
        main.re /= s;
        main.im /= s;
        Cplx diff = W - main;
        real320 mag = sqrt(diff.re * diff.re + diff.im * diff.im);
        out.per_ell.push_back(mag.convert_to<double>());
        lhs += mag;
    }
    out.lhs = lhs.convert_to<double>();
    double Ld = static_cast<double>(L);
    double core = Ld * std::pow(static_cast<double>(s), 1.0 - 1.0 / k);
    out.rhs_2k1 = n2eta * core;
    out.rhs_general = n2eta * (core + static_cast<double>(s));
    return out;
}

namespace {

// Phase evaluator for g(x) = (a/q) x^k + sum_j (r_j / 2^32) x^j: phases are
// exact integers modulo den = q * 2^32.
struct PhaseBasis {
    u64 den = 0;
    u64 a_mod_q = 0;
    int k = 2;
    std::vector<u64> lower;  // r_j * q mod den, coefficient of x^j, j = 0..k-1

    // coefficient vector of ell * g(c * x) as a polynomial in x, mod den
    std::vector<u64> scaled(u64 ell, u64 c) const {
        std::vector<u64> out(k + 1);
        u64 em = ell % den;
        u64 cm = c % den;
        u64 cp = 1;
        for (int j = 0; j < k; ++j) {
            out[j] = mulmod(mulmod(em, lower[j], den), cp, den);
            cp = mulmod(cp, cm, den);
        }
        // leading: ell * a * 2^32 * c^k mod q*2^32 = (ell*a*c^k mod q) * 2^32
        u64 q = den >> 32;
        u64 lead = mulmod(mulmod(ell % q, a_mod_q, q), powmod(c, k, q), q);
        out[k] = lead << 32;
        return out;
    }
};

u64 eval_poly_mod(const std::vector<u64>& c, u64 n, u64 den) {
    u64 acc = 0;
    u64 nm = n % den;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (mulmod(acc, nm, den) + *it) % den;
    return acc;
}

// |sum_{n=n0}^{n1} e(poly(n)/den)| with the polynomial advanced by exact
// finite differences mod den.
std::complex<double> window_sum(const std::vector<u64>& c, u64 n0, u64 n1, u64 den,
                                const std::complex<double>* weights = nullptr) {
    int k = static_cast<int>(c.size()) - 1;
    u64 m = n1 - n0 + 1;
    double sre = 0, sim = 0;
    auto add = [&](u64 idx, u64 phase) {
        double ang = kTwoPi * (static_cast<double>(phase) / static_cast<double>(den));
        double tr = std::cos(ang), ti = std::sin(ang);
        if (weights) {
            auto w = weights[idx];
            sre += w.real() * tr - w.imag() * ti;
            sim += w.real() * ti + w.imag() * tr;
        } else {
            sre += tr;
            sim += ti;
        }
    };
    if (m <= static_cast<u64>(k + 1)) {
        for (u64 n = n0; n <= n1; ++n) add(n - n0, eval_poly_mod(c, n, den));
        return {sre, sim};
    }
    // forward-difference table seeded from the first k+1 values
    std::vector<u64> table(k + 1), diff(k + 1);
    for (int i = 0; i <= k; ++i) table[i] = eval_poly_mod(c, n0 + i, den);
    for (int lvl = 0; lvl <= k; ++lvl) {
        diff[lvl] = table[0];
        for (int i = 0; i + 1 <= k - lvl; ++i)
            table[i] = (table[i + 1] + den - table[i]) % den;
    }
    for (u64 n = n0; n <= n1; ++n) {
        add(n - n0, diff[0]);
        for (int i = 0; i < k; ++i) diff[i] = (diff[i] + diff[i + 1]) % den;
    }
    return {sre, sim};
}

PhaseBasis make_basis(const ParamSchedule& sched, const Convergent& conv, u64 coeff_seed,
                      bool with_lower) {
    if (conv.q <= 0 || conv.q >= Integer(1) << 31)
        throw DomainError("modulus q must be in [1, 2^31) for exact dyadic phases");
    PhaseBasis basis;
    u64 q = conv.q.convert_to<u64>();
    basis.den = q << 32;
    Integer am = conv.a % Integer(q);
    if (am < 0) am += q;
    basis.a_mod_q = am.convert_to<u64>();
    basis.k = sched.k;
    basis.lower.assign(sched.k, 0);
    if (with_lower) {
        Xorshift64Star rng(coeff_seed);
        for (int j = 0; j < sched.k; ++j)
            basis.lower[j] = mulmod(rng.next_u32(), q, basis.den);
    }
    return basis;
}

}  // namespace

ExperimentReport type_I_experiment(const ParamSchedule& sched, const Convergent& conv, u64 Y,
                                   u64 coeff_seed, u64 op_cap) {
    if (Y < 1) throw DomainError("Y >= 1 required");
    ExperimentReport rep;
    rep.seed_a = coeff_seed;
    const u64 N = static_cast<u64>(sched.N);
    const double Nd = static_cast<double>(N);
    const double rho_d = sched.rho_value.convert_to<double>();
    rep.bound = std::pow(Nd, 1.0 - 2.0 * sched.eta);
    rep.ell_max = sched.L >= 1 ? static_cast<u64>(sched.L) : 0;
    double y_cap = sched.k == 2 ? std::pow(Nd, 1.0 - 2.5 * rho_d)
                                : std::pow(Nd, 0.5 + rho_d);
    rep.range_ok = static_cast<double>(Y) <= y_cap;
    if (rep.ell_max == 0) return rep;

    u64 est = 0;
    for (u64 y = Y + 1; y <= 2 * Y; ++y) {
        u64 n0 = N / (2 * y) + 1, n1 = N / y;
        if (n1 >= n0) est += n1 - n0 + 1;
    }
    est *= rep.ell_max;
    if (est > op_cap) throw BudgetError("type I term count exceeds op cap");

    PhaseBasis basis = make_basis(sched, conv, coeff_seed, true);
    double value = 0;
    for (u64 ell = 1; ell <= rep.ell_max; ++ell) {
        for (u64 y = Y + 1; y <= 2 * Y; ++y) {
            u64 n0 = N / (2 * y) + 1, n1 = N / y;
            if (n1 < n0) continue;
            auto c = basis.scaled(ell, y);
            auto s = window_sum(c, n0, n1, basis.den);
            value += hypot2(s.real(), s.imag());
            rep.terms += n1 - n0 + 1;
        }
    }
    rep.value = value;
    rep.ratio = rep.bound > 0 ? value / rep.bound : 0.0;
    return rep;
}

ExperimentReport type_II_experiment(const ParamSchedule& sched, const Convergent& conv, u64 Y,
                                    u64 a_seed, u64 b_seed, u64 op_cap) {
    if (Y < 1) throw DomainError("Y >= 1 required");
    ExperimentReport rep;
    rep.seed_a = a_seed;
    rep.seed_b = b_seed;
    const u64 N = static_cast<u64>(sched.N);
    const double Nd = static_cast<double>(N);
    const double rho_d = sched.rho_value.convert_to<double>();
    const double Jd = static_cast<double>(sched.J);
    rep.bound = std::pow(Nd, 1.0 - sched.eta);
    rep.ell_max = sched.L >= 1 ? static_cast<u64>(sched.L) : 0;
    double Yd = static_cast<double>(Y);
    if (sched.k >= 3)
        rep.range_ok = Yd >= std::pow(Nd, rho_d) && Yd <= std::pow(Nd, 1.0 - 2.0 * Jd * rho_d);
    else
        rep.range_ok = Yd >= std::pow(Nd, 2.0 * rho_d) && Yd <= std::pow(Nd, 1.0 - 4.0 * rho_d);
    rep.diagonal_quadruples =
        count_diagonal_quadruples(std::max<u64>(rep.ell_max, 1), Y + 1, 2 * Y, sched.k);
    if (rep.ell_max == 0) return rep;

    const u64 x_max = N / Y;
    u64 est = 0;
    for (u64 x = 1; x <= x_max; ++x) {
        u64 y0 = std::max(Y + 1, N / (2 * x) + 1);
        u64 y1 = std::min(2 * Y, N / x);
        if (y1 >= y0) est += y1 - y0 + 1;
    }
    est *= rep.ell_max;
    if (est > op_cap) throw BudgetError("type II term count exceeds op cap");

    // unimodular coefficient streams, dyadic phases so both evaluators agree
    std::vector<std::complex<double>> ax(x_max + 1), by(2 * Y + 1);
    {
        Xorshift64Star ra(a_seed);
        for (u64 x = 1; x <= x_max; ++x) ax[x] = ra.next_phase();
        Xorshift64Star rb(b_seed);
        for (u64 y = Y + 1; y <= 2 * Y; ++y) by[y] = rb.next_phase();
    }

    PhaseBasis basis = make_basis(sched, conv, 0, false);
    double value = 0;
    for (u64 ell = 1; ell <= rep.ell_max; ++ell) {
        double ore = 0, oim = 0;
        for (u64 x = 1; x <= x_max; ++x) {
            u64 y0 = std::max(Y + 1, N / (2 * x) + 1);
            u64 y1 = std::min(2 * Y, N / x);
            if (y1 < y0) continue;
            auto c = basis.scaled(ell, x);
            auto inner = window_sum(c, y0, y1, basis.den, by.data() + y0);
            ore += ax[x].real() * inner.real() - ax[x].imag() * inner.imag();
            oim += ax[x].real() * inner.imag() + ax[x].imag() * inner.real();
            rep.terms += y1 - y0 + 1;
        }
        value += hypot2(ore, oim);
    }
    rep.value = value;
    rep.ratio = rep.bound > 0 ? value / rep.bound : 0.0;
    return rep;
}

u64 count_diagonal_quadruples(u64 L, u64 y_lo, u64 y_hi, int k) {
    if (k < 1) throw DomainError("k >= 1 required");
    u64 count = 0;
    auto pw = [&](u64 y) {
        u128 r = 1;
        for (int i = 0; i < k; ++i) r *= y;
        return r;
    };
    for (u64 l1 = 1; l1 <= L; ++l1)
        for (u64 y1 = y_lo; y1 <= y_hi; ++y1)
            for (u64 l2 = 1; l2 <= L; ++l2)
                for (u64 y2 = y_lo; y2 <= y_hi; ++y2)
                    if (u128(l1) * pw(y1) == u128(l2) * pw(y2)) ++count;
    return count;
}

}  // namespace fracpoly

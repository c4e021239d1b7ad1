#include "fracpoly/sieve.hpp"

#include "fracpoly/quad.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace fracpoly {

namespace {

template <class F>
double gl_apply(const GLRule& r, const F& f, double a, double b, u64& nodes) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0;
    for (std::size_t i = 0; i < r.x.size(); ++i) sum += r.w[i] * f(mid + half * r.x[i]);
    nodes += r.x.size();
    return sum * half;
}

// Adaptive bisection with a GL7/GL15 error estimate per panel.
template <class F>
double adaptive_gl(const F& f, double a, double b, double tol, double& cert, u64& nodes,
                   u64 max_nodes) {
    struct Seg {
        double a, b, tol;
    };
    std::deque<Seg> work{{a, b, tol}};
    double total = 0;
    while (!work.empty()) {
        auto [sa, sb, stol] = work.front();
        work.pop_front();
        double coarse = gl_apply(gl7(), f, sa, sb, nodes);
        double fine = gl_apply(gl15(), f, sa, sb, nodes);
        double err = std::abs(fine - coarse);
        if (err <= stol || err <= 1e-14 * (sb - sa) || (sb - sa) < 1e-13) {
            total += fine;
            cert += err;
        } else {
            if (nodes > max_nodes)
                throw BudgetError("quadrature node budget exhausted", total + fine, cert + err);
            double m = 0.5 * (sa + sb);
            work.push_back({sa, m, stol / 2});
            work.push_back({m, sb, stol / 2});
        }
    }
    return total;
}

double euler_gamma_exp() { return std::exp(-0.57721566490153286060651209008240243); }

}  // namespace

BuchstabTable::BuchstabTable(double u_max, double h) : h_(h), u_max_(u_max), cert_(1e-8) {
    std::size_t per_unit = static_cast<std::size_t>(std::lround(1.0 / h));
    if (std::abs(per_unit * h - 1.0) > 1e-12)
        throw DomainError("grid step must divide 1");
    std::size_t n = static_cast<std::size_t>(std::lround((u_max - 1.0) / h)) + 1;
    values_.resize(n);

    auto u_of = [&](std::size_t i) { return 1.0 + i * h_; };

    // closed forms on [1,3]
    std::size_t i3 = std::min(n - 1, 2 * per_unit);
    for (std::size_t i = 0; i <= i3; ++i) {
        double u = u_of(i);
        values_[i] = u <= 2.0 ? 1.0 / u : (1.0 + std::log(u - 1.0)) / u;
    }
    if (i3 + 1 >= n) return;

    // interpolated omega at off-grid points below the current frontier
    auto interp = [&](double u, std::size_t frontier) -> double {
        if (u <= 2.0) return 1.0 / u;
        if (u <= 3.0) return (1.0 + std::log(u - 1.0)) / u;
        double t = (u - 1.0) / h_;
        std::size_t i = static_cast<std::size_t>(t);
        if (i + 2 > frontier) i = frontier - 2;
        if (i < 1) i = 1;
        double s = t - i;
        double ym1 = values_[i - 1], y0 = values_[i], y1 = values_[i + 1], y2 = values_[i + 2];
        // 4-point Lagrange on a uniform grid
        return ym1 * (-s * (s - 1) * (s - 2) / 6.0) + y0 * ((s + 1) * (s - 1) * (s - 2) / 2.0) +
               y1 * (-(s + 1) * s * (s - 2) / 2.0) + y2 * ((s + 1) * s * (s - 1) / 6.0);
    };

    // march W(u) = u*omega(u), W' = omega(u-1), Simpson per grid cell
    double W = 3.0 * values_[i3];
    for (std::size_t i = i3; i + 1 < n; ++i) {
        double a = u_of(i) - 1.0;
        double fa = interp(a, i);
        double fm = interp(a + h_ / 2.0, i);
        double fb = interp(a + h_, i);
        W += h_ / 6.0 * (fa + 4.0 * fm + fb);
        values_[i + 1] = W / u_of(i + 1);
    }
}

double BuchstabTable::operator()(double u) const {
    if (u < 1.0) throw DomainError("Buchstab omega is defined for u >= 1");
    if (u <= 2.0) return 1.0 / u;
    if (u <= 3.0) return (1.0 + std::log(u - 1.0)) / u;
    if (u > u_max_) throw DomainError("u beyond table range");
    double t = (u - 1.0) / h_;
    std::size_t i = static_cast<std::size_t>(t);
    if (i + 2 >= values_.size()) i = values_.size() - 3;
    if (i < 1) i = 1;
    double s = t - i;
    double ym1 = values_[i - 1], y0 = values_[i], y1 = values_[i + 1], y2 = values_[i + 2];
    return ym1 * (-s * (s - 1) * (s - 2) / 6.0) + y0 * ((s + 1) * (s - 1) * (s - 2) / 2.0) +
           y1 * (-(s + 1) * s * (s - 2) / 2.0) + y2 * ((s + 1) * s * (s - 1) / 6.0);
}

const BuchstabTable& buchstab_table() {
    static const BuchstabTable table;
    return table;
}

double buchstab_omega(double u, double tol) {
    const auto& t = buchstab_table();
    if (tol < t.certificate() && u > 3.0)
        throw PrecisionError("requested tolerance below table certificate", 0);
    if (u >= t.u_max()) return euler_gamma_exp();  // |omega - e^-gamma| < 1e-6 for u >= 8
    return t(u);
}

void RegionSpec::validate() const {
    if (!(c > 0.05 && c < 0.5)) throw DomainError("region constant c must lie in (0.05, 0.5)");
}

IntegralResult sieve_integral(const RegionSpec& region, double tol, u64 max_nodes) {
    region.validate();
    if (!(tol > 0)) throw DomainError("tol must be positive");
    const double c = region.c;
    IntegralResult res;
    const auto& omega = buchstab_table();
    const double x_hi = 0.5;
    double inner_tol = tol / (4.0 * (x_hi - c));
    double outer_tol = tol / 2.0;

    u64 nodes = 0;
    double cert = 0;

    auto inner = [&](double x) -> double {
        double y_hi = std::min(x, (1.0 - x) / 2.0);
        if (y_hi <= c) return 0.0;
        auto f = [&](double y) {
            double u = (1.0 - x - y) / y;
            if (u < 1.0) u = 1.0;  // boundary roundoff only; region excludes u < 1
            return omega(u) / (y * y);
        };
        // split at omega's breakpoints: (1-x-y)/y integer j  =>  y = (1-x)/(j+1)
        std::vector<double> cuts{c};
        for (int j = 2; j < 40; ++j) {
            double y = (1.0 - x) / (j + 1);
            if (y > c && y < y_hi) cuts.push_back(y);
        }
        cuts.push_back(y_hi);
        std::sort(cuts.begin(), cuts.end());
        double total = 0;
        double local_cert = 0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            total += adaptive_gl(f, cuts[i], cuts[i + 1], inner_tol / (cuts.size() - 1),
                                 local_cert, nodes, max_nodes);
        return total / x;
    };

    std::vector<double> xcuts{c, x_hi};
    if (c < 1.0 / 3.0) xcuts.insert(xcuts.begin() + 1, 1.0 / 3.0);
    double value = 0;
    for (std::size_t i = 0; i + 1 < xcuts.size(); ++i)
        value += adaptive_gl(inner, xcuts[i], xcuts[i + 1], outer_tol / (xcuts.size() - 1), cert,
                             nodes, max_nodes);

    res.value = value;
    res.error = cert + inner_tol * (x_hi - c) + 2e-8 * std::abs(value);
    res.nodes = nodes;
    return res;
}

CriticalResult critical_constant(double tol) {
    if (!(tol > 0 && tol <= 1e-5)) throw DomainError("critical_constant requires 0 < tol <= 1e-5");
    double lo = 0.15, hi = 0.25;
    double itol = tol / 4.0;
    u64 nodes = 0;
    auto eval = [&](double c) {
        auto r = sieve_integral({c}, itol);
        nodes += r.nodes;
        return r;
    };
    auto rlo = eval(lo), rhi = eval(hi);
    if (!(rlo.value > 1.0 && rhi.value < 1.0))
        throw BudgetError("no sign change of integral-1 on [0.15, 0.25]", rlo.value, rhi.value);
    CriticalResult out;
    for (int iter = 0; iter < 80; ++iter) {
        double mid = 0.5 * (lo + hi);
        auto rm = eval(mid);
        out.c_star = mid;
        out.integral_at_c_star = rm.value;
        out.error = rm.error;
        if (std::abs(rm.value - 1.0) <= tol - rm.error) break;
        if (rm.value > 1.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-14) break;
    }
    out.nodes = nodes;
    return out;
}

SiftSet SiftSet::interval_B(u64 N) {
    SiftSet s;
    s.label = "B";
    s.elements.reserve(N - N / 2);
    for (u64 n = N / 2 + 1; n <= N; ++n) s.elements.push_back(n);
    return s;
}

SiftSet SiftSet::from(std::vector<u64> values, std::string label) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    SiftSet s;
    s.elements = std::move(values);
    s.label = std::move(label);
    return s;
}

SiftSet SiftSet::divide_by(u64 d) const {
    SiftSet out;
    out.label = label + "_/" + std::to_string(d);
    for (u64 n : elements)
        if (n % d == 0) out.elements.push_back(n / d);
    return out;
}

u64 sift(const SiftSet& E, double z) {
    if (E.elements.empty()) return 0;
    if (z <= 2.0) return E.elements.size();
    u64 pmax = static_cast<u64>(std::ceil(z)) - 1;  // largest integer < z
    u64 lo = E.elements.front(), hi = E.elements.back();
    if (lo > 1000000000ull || hi > 1000000000ull)
        throw DomainError("sift elements capped at 1e9");
    auto primes = primes_up_to(pmax);

    if (hi - lo <= (1ull << 27)) {
        std::vector<bool> marked(hi - lo + 1, false);
        for (u64 p : primes) {
            u64 first = (lo + p - 1) / p * p;
            for (u64 m = first; m <= hi; m += p) marked[m - lo] = true;
        }
        u64 count = 0;
        for (u64 n : E.elements)
            if (!marked[n - lo]) ++count;
        return count;
    }

    u64 count = 0;
    for (u64 n : E.elements) {
        bool ok = true;
        for (u64 p : primes) {
            if (p > n) break;
            if (n % p == 0) { ok = false; break; }
        }
        if (ok) ++count;
    }
    return count;
}

IdentityCheck buchstab_identity_check(const SiftSet& E, double z1, double z2) {
    if (!(z1 >= 2.0 && z1 <= z2)) throw DomainError("need 2 <= z1 <= z2");
    IdentityCheck out;
    out.lhs = sift(E, z2);
    u64 rhs = sift(E, z1);
    u64 p_lo = static_cast<u64>(std::ceil(z1));          // p >= z1
    u64 p_hi = static_cast<u64>(std::ceil(z2)) - 1;      // p < z2
    if (p_hi >= 2 && p_hi >= p_lo) {
        for (u64 p : primes_up_to(p_hi)) {
            if (p < p_lo) continue;
            rhs -= sift(E.divide_by(p), static_cast<double>(p));
        }
    }
    out.rhs = rhs;
    out.equal = out.lhs == out.rhs;
    return out;
}

namespace {
bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
        if (n % p == 0) return false;
    return true;
}
}  // namespace

Decomposition decompose_S1_S4(const SiftSet& E, u64 N, double alpha_exp, double beta_exp) {
    if (!(alpha_exp > 0 && beta_exp > 0 && alpha_exp + beta_exp <= 0.5))
        throw DomainError("need 0 < alpha < alpha+beta <= 1/2");
    for (u64 n : E.elements)
        if (!(n > N / 2 && n <= N)) throw DomainError("E must be contained in (N/2, N]");

    double za = std::pow(static_cast<double>(N), alpha_exp);
    double zab = std::pow(static_cast<double>(N), alpha_exp + beta_exp);
    double z2 = std::sqrt(2.0 * static_cast<double>(N));

    u64 p_first = static_cast<u64>(std::ceil(za));       // p >= N^alpha
    u64 p_mid = static_cast<u64>(std::floor(zab));       // p <= N^(alpha+beta)
    u64 p_last = static_cast<u64>(std::ceil(z2)) - 1;    // p < (2N)^(1/2)
    u64 q_mid_hi = static_cast<u64>(std::ceil(zab)) - 1; // q < N^(alpha+beta)
    u64 q_mid_lo = static_cast<u64>(std::ceil(zab));     // q >= N^(alpha+beta)

    auto primes = primes_up_to(std::max<u64>(p_last, 2));

    Decomposition out;
    out.S1 = sift(E, za);
    for (u64 p : primes) {
        if (p < p_first || p > p_last) continue;
        SiftSet Ep = E.divide_by(p);
        if (p <= p_mid) {
            out.S2 += sift(Ep, static_cast<double>(p));
        } else {
            out.S3 += sift(Ep, za);
            for (u64 q : primes) {
                if (q < p_first) continue;
                if (q >= p) break;
                u64 s_pq = sift(Ep.divide_by(q), static_cast<double>(q));
                if (q <= q_mid_hi)
                    out.S3 -= s_pq;
                else if (q >= q_mid_lo)
                    out.S4 += s_pq;
            }
        }
    }
    for (u64 n : E.elements)
        if (is_prime_u64(n)) ++out.primes_in_E;
    out.identity_holds = out.combination() == static_cast<long long>(out.primes_in_E);
    return out;
}

ComparisonReport compare_AB(const SiftSet& A, u64 N, double delta, double alpha_exp,
                            double beta_exp, double eta) {
    SiftSet B = SiftSet::interval_B(N);
    Decomposition da = decompose_S1_S4(A, N, alpha_exp, beta_exp);
    Decomposition db = decompose_S1_S4(B, N, alpha_exp, beta_exp);

    ComparisonReport rep;
    rep.delta = delta;
    double scale = delta * std::pow(static_cast<double>(N), 1.0 - eta / 2.0);
    auto add = [&](std::string name, u64 a, u64 b) {
        ComparisonRow row;
        row.name = std::move(name);
        row.a_side = static_cast<double>(a);
        row.b_side = 2.0 * delta * static_cast<double>(b);
        row.difference = row.a_side - row.b_side;
        row.scale = scale;
        rep.rows.push_back(row);
    };
    add("S1", da.S1, db.S1);
    add("S2", da.S2, db.S2);
    add("S3", da.S3, db.S3);
    add("primes", da.primes_in_E, db.primes_in_E);
    rep.prime_ratio = db.primes_in_E == 0
                          ? 0.0
                          : static_cast<double>(da.primes_in_E) /
                                (2.0 * delta * static_cast<double>(db.primes_in_E));
    return rep;
}

}  // namespace fracpoly

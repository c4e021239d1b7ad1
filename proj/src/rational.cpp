#include "fracpoly/rational.hpp"

#include <cmath>
#include <regex>
#include <sstream>

namespace fracpoly {

namespace {

Integer floor_div(const Integer& num, const Integer& den) {
    Integer q = num / den, r = num % den;
    if (r != 0 && ((r < 0) != (den < 0))) --q;
    return q;
}

bool is_perfect_square(const Integer& d) {
    if (d < 0) return false;
    Integer r = boost::multiprecision::sqrt(d);
    return r * r == d;
}

// sign of t + r*sqrt(d), exact
int surd_sign(const Integer& t, const Integer& r, const Integer& d) {
    if (r == 0) return t == 0 ? 0 : (t > 0 ? 1 : -1);
    if (r > 0) {
        if (t >= 0) return 1;
        Integer lhs = r * r * d, rhs = t * t;
        return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    }
    return -surd_sign(-t, -r, d);
}

// Quadratic field element (p + r*sqrt(d))/s with s > 0, gcd-normalized.
struct SurdElem {
    Integer p, r, s, d;

    void normalize() {
        if (s < 0) { p = -p; r = -r; s = -s; }
        Integer g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(p), abs(r)), s);
        if (g > 1) { p /= g; r /= g; s /= g; }
    }

    int cmp_int(const Integer& m) const {  // sign of value - m
        return surd_sign(p - m * s, r, d);
    }

    Integer floor_val() const {
        real192 approx = (real192(p) + real192(r) * sqrt(real192(d))) / real192(s);
        Integer m(boost::multiprecision::floor(approx).convert_to<Integer>());
        while (cmp_int(m) < 0) --m;
        while (cmp_int(m + 1) >= 0) ++m;
        return m;
    }

    SurdElem recip_of_minus(const Integer& a) const {
        // 1 / (value - a)
        Integer pp = p - a * s;
        Integer den = pp * pp - r * r * d;
        SurdElem out{s * pp, -s * r, den, d};
        out.normalize();
        return out;
    }

    bool is_integer_remainder(const Integer& a) const {
        return r == 0 && p - a * s == 0;
    }
};

}  // namespace

AlphaSpec AlphaSpec::sqrt_of(long long n) { return surd(0, 1, 1, n); }

AlphaSpec AlphaSpec::surd(Integer p, Integer r, Integer s, Integer d) {
    if (s == 0) throw DomainError("surd denominator must be nonzero");
    if (d <= 0) throw DomainError("surd radicand must be positive");
    AlphaSpec a;
    a.kind = Kind::Surd;
    a.p = std::move(p); a.r = std::move(r); a.s = std::move(s); a.d = std::move(d);
    if (a.r != 0 && is_perfect_square(a.d))
        throw DomainError("surd radicand must be a non-square");
    return a;
}

AlphaSpec AlphaSpec::decimal(const std::string& digits, unsigned bits) {
    if (bits < 64) throw DomainError("decimal alpha needs precision >= 64 bits");
    AlphaSpec a;
    a.kind = Kind::Decimal;
    a.bits = bits;
    // parse [-]int[.frac]
    std::string t = digits;
    bool neg = !t.empty() && t[0] == '-';
    if (neg) t = t.substr(1);
    auto dot = t.find('.');
    std::string ip = dot == std::string::npos ? t : t.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : t.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw DomainError("empty decimal literal");
    Integer num = ip.empty() ? Integer(0) : Integer(ip);
    Integer den = 1;
    for (char c : fp) {
        if (c < '0' || c > '9') throw DomainError("bad decimal literal");
        num = num * 10 + (c - '0');
        den *= 10;
    }
    a.decimal_value = Rational(neg ? -num : num, den);
    return a;
}

AlphaSpec AlphaSpec::rational(const Rational& v) {
    AlphaSpec a;
    a.kind = Kind::Rat;
    a.rat_value = v;
    return a;
}

AlphaSpec AlphaSpec::parse(const std::string& text) {
    if (text.rfind("sqrt:", 0) == 0) {
        return sqrt_of(std::stoll(text.substr(5)));
    }
    if (text.rfind("surd:", 0) == 0) {
        static const std::regex re(R"(\((-?\d+)([+-]\d+)\*sqrt(\d+)\)/(-?\d+))");
        std::smatch m;
        std::string body = text.substr(5);
        if (!std::regex_match(body, m, re))
            throw DomainError("bad surd syntax, expected surd:(p+r*sqrtD)/s");
        std::string rs = m[2].str();
        if (!rs.empty() && rs[0] == '+') rs = rs.substr(1);  // gmp rejects "+1"
        return surd(Integer(m[1].str()), Integer(rs), Integer(m[4].str()),
                    Integer(m[3].str()));
    }
    if (text.rfind("dec:", 0) == 0) {
        static const std::regex re(R"(([-0-9.]+)<bits=(\d+)>)");
        std::smatch m;
        std::string body = text.substr(4);
        if (!std::regex_match(body, m, re))
            throw DomainError("bad decimal syntax, expected dec:1.414<bits=128>");
        return decimal(m[1].str(), static_cast<unsigned>(std::stoul(m[2].str())));
    }
    if (text.rfind("rat:", 0) == 0) {
        std::string body = text.substr(4);
        auto slash = body.find('/');
        Integer num(slash == std::string::npos ? body : body.substr(0, slash));
        Integer den(slash == std::string::npos ? std::string("1") : body.substr(slash + 1));
        if (den == 0) throw DomainError("rational denominator must be nonzero");
        return rational(Rational(num, den));
    }
    throw DomainError("unknown alpha syntax: " + text);
}

bool AlphaSpec::is_irrational() const {
    switch (kind) {
        case Kind::Surd: return r != 0;
        case Kind::Decimal: return true;  // treated as irrational-with-uncertainty
        case Kind::Rat: return false;
    }
    return false;
}

real640 AlphaSpec::to_real() const {
    switch (kind) {
        case Kind::Surd:
            return (real640(p) + real640(r) * sqrt(real640(d))) / real640(s);
        case Kind::Decimal:
            return real640(decimal_value);
        case Kind::Rat:
            return real640(rat_value);
    }
    return real640(0);
}

std::string AlphaSpec::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Surd:
            if (p == 0 && r == 1 && s == 1) os << "sqrt:" << d;
            else os << "surd:(" << p << (r >= 0 ? "+" : "") << r << "*sqrt" << d << ")/" << s;
            break;
        case Kind::Decimal:
            os << "dec:" << decimal_value.convert_to<double>() << "<bits=" << bits << ">";
            break;
        case Kind::Rat:
            os << "rat:" << boost::multiprecision::numerator(rat_value) << "/"
               << boost::multiprecision::denominator(rat_value);
            break;
    }
    return os.str();
}

namespace {

struct ConvergentBuilder {
    Integer h1 = 1, h2 = 0;  // h_{i-1}, h_{i-2}
    Integer k1 = 0, k2 = 1;
    std::vector<Convergent> out;
    Integer q_max;

    explicit ConvergentBuilder(Integer qm) : q_max(std::move(qm)) {}

    // Returns false once denominators exceed q_max.
    bool push(const Integer& a) {
        Integer h = a * h1 + h2;
        Integer k = a * k1 + k2;
        h2 = h1; h1 = h;
        k2 = k1; k1 = k;
        if (k > q_max) return false;
        out.push_back({h, k});
        return true;
    }

    // Denominators are strictly increasing (after the first); once the
    // guaranteed minimum of the next one exceeds q_max we can stop without
    // computing the next partial quotient.
    bool next_must_exceed() const { return k1 + k2 > q_max; }
};

std::vector<Convergent> cf_of_rational(Rational x, const Integer& q_max) {
    ConvergentBuilder b(q_max);
    while (true) {
        Integer num = boost::multiprecision::numerator(x);
        Integer den = boost::multiprecision::denominator(x);
        Integer a = floor_div(num, den);
        if (!b.push(a)) break;
        Rational rem = x - Rational(a);
        if (rem == 0) break;
        x = 1 / rem;
    }
    return b.out;
}

std::vector<Convergent> cf_of_surd(const AlphaSpec& alpha, const Integer& q_max) {
    SurdElem x{alpha.p, alpha.r, alpha.s, alpha.d};
    x.normalize();
    ConvergentBuilder b(q_max);
    while (true) {
        Integer a = x.floor_val();
        if (!b.push(a)) break;
        if (x.is_integer_remainder(a)) break;  // degenerate (r reduced to 0)
        if (b.next_must_exceed()) break;
        x = x.recip_of_minus(a);
    }
    return b.out;
}

std::vector<Convergent> cf_of_decimal(const AlphaSpec& alpha, const Integer& q_max) {
    // Certified interval [lo, hi] containing alpha.
    Rational radius = Rational(1, Integer(1) << alpha.bits);
    Rational lo = alpha.decimal_value - radius;
    Rational hi = alpha.decimal_value + radius;
    ConvergentBuilder b(q_max);
    while (true) {
        Integer nl = boost::multiprecision::numerator(lo);
        Integer dl = boost::multiprecision::denominator(lo);
        Integer a = floor_div(nl, dl);
        Integer nh = boost::multiprecision::numerator(hi);
        Integer dh = boost::multiprecision::denominator(hi);
        Integer ah = floor_div(nh, dh);
        if (a != ah) throw CfPrecisionError(b.out);
        if (!b.push(a)) break;
        Rational rl = lo - Rational(a);
        Rational rh = hi - Rational(a);
        if (rl == 0 || rh == 0) throw CfPrecisionError(b.out);  // straddles a+0
        if (b.next_must_exceed()) break;
        Rational new_lo = 1 / rh;
        Rational new_hi = 1 / rl;
        lo = new_lo;
        hi = new_hi;
    }
    return b.out;
}

}  // namespace

std::vector<Convergent> cf_convergents(const AlphaSpec& alpha, const Integer& q_max) {
    if (q_max < 1) throw DomainError("q_max must be >= 1");
    switch (alpha.kind) {
        case AlphaSpec::Kind::Rat: return cf_of_rational(alpha.rat_value, q_max);
        case AlphaSpec::Kind::Surd:
            if (alpha.r == 0) return cf_of_rational(Rational(alpha.p, alpha.s), q_max);
            return cf_of_surd(alpha, q_max);
        case AlphaSpec::Kind::Decimal: return cf_of_decimal(alpha, q_max);
    }
    throw DomainError("bad alpha kind");
}

long long j_invariant(int k, bool monomial) {
    if (k < 2) throw DomainError("j_invariant requires k >= 2");
    if (monomial)
        return k <= 5 ? (1ll << (k - 1)) : static_cast<long long>(k) * (k - 1);
    return k <= 7 ? (1ll << (k - 1)) : 2ll * k * (k - 1);
}

Rational rho(int k, long long J) {
    if (k < 2) throw DomainError("rho requires k >= 2");
    if (k == 2) return Rational(2, 13);
    if (k == 3) return Rational(1, 10);
    return Rational(4079, Integer(10000) * J);
}

ParamSchedule schedule(long long N, int k, bool monomial, double epsilon,
                       std::optional<double> eta_opt) {
    if (N < 10) throw DomainError("schedule requires N >= 10");
    if (k < 2) throw DomainError("schedule requires k >= 2");
    if (!(epsilon > 0 && epsilon < 0.1)) throw DomainError("epsilon must be in (0, 0.1)");
    double eta = eta_opt.value_or(epsilon / 1000.0);
    if (!(eta > 0 && eta < epsilon)) throw DomainError("eta must be in (0, epsilon)");

    ParamSchedule s;
    s.N = N;
    s.k = k;
    s.monomial = monomial;
    s.J = j_invariant(k, monomial);
    s.rho_value = rho(k, s.J);
    s.epsilon = epsilon;
    s.eta = eta;
    double rho_d = s.rho_value.convert_to<double>();
    s.L1 = 2.0 * std::pow(static_cast<double>(N), rho_d - epsilon / 2.0);
    s.L = std::pow(static_cast<double>(N), rho_d - epsilon / 3.0);
    s.delta = 1.0 / s.L1;
    s.q_lo = std::sqrt(s.L1 * std::pow(static_cast<double>(N), k));
    s.q_hi = 2.0 * s.q_lo;
    s.l_window_ok = s.L > std::pow(static_cast<double>(N), epsilon / 7.0) * s.L1;
    return s;
}

ModulusSelection select_modulus(const AlphaSpec& alpha, int k, bool monomial, double epsilon,
                                const Integer& q_min, const Integer& q_cap) {
    if (!alpha.is_irrational())
        throw DomainError("select_modulus requires an irrational alpha");
    double rho_d = rho(k, j_invariant(k, monomial)).convert_to<double>();
    double expo = k + rho_d - epsilon / 2.0;

    auto convs = cf_convergents(alpha, q_cap);
    for (const auto& cv : convs) {
        if (cv.q < q_min) continue;
        double q_d = cv.q.convert_to<double>();
        double q2 = q_d * q_d;
        // Largest integer N with 2*N^expo <= q^2; ties round down.
        long long lo = 10, hi = 10;
        auto h = [&](long long n) { return 2.0 * std::pow(static_cast<double>(n), expo); };
        if (h(lo) > q2) continue;
        while (h(hi) <= q2) {
            if (hi > (1ll << 61)) break;
            hi *= 2;
        }
        while (hi - lo > 1) {
            long long mid = lo + (hi - lo) / 2;
            if (h(mid) <= q2) lo = mid; else hi = mid;
        }
        ParamSchedule s = schedule(lo, k, monomial, epsilon);
        if (q_d >= s.q_lo && q_d <= s.q_hi) return {cv, s};
    }
    throw BudgetError("no convergent with q in [q_min, q_cap] admits a consistent schedule");
}

std::vector<InequalityCheck> verify_rho_inequalities(int k, bool monomial) {
    if (k < 2) throw DomainError("k >= 2 required");
    Rational r = rho(k, j_invariant(k, monomial));
    std::vector<InequalityCheck> out;
    auto add = [&](std::string name, Rational lhs, Rational rhs, bool strict) {
        InequalityCheck c;
        c.name = std::move(name);
        c.lhs = lhs;
        c.rhs = rhs;
        c.strict = strict;
        c.pass = strict ? (lhs < rhs) : (lhs <= rhs);
        c.margin = (rhs - lhs).convert_to<double>();
        out.push_back(std::move(c));
    };
    if (k == 2) {
        add("rho_lt_2_7", r, Rational(2, 7), true);
        add("rho_lt_2_11", r, Rational(2, 11), true);
    }
    if (k >= 3) {
        // (4.3): rho < 3k/(20k+5), and the equivalent (2k+1/2) rho <= 3k/10
        add("rho_lt_3k_over_20k5", r, Rational(3 * k, 20 * k + 5), true);
        add("twok_half_rho_le_3k_10", r * Rational(4 * k + 1, 2), Rational(3 * k, 10), false);
    }
    if (k >= 4) {
        // rho (5/2 - 3/(2k)) < 1/(2k)
        add("sec3_type1_margin", r * (Rational(5, 2) - Rational(3, 2 * k)), Rational(1, 2 * k),
            true);
    }
    return out;
}

}  // namespace fracpoly

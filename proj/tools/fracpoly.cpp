// fracpoly: command-line front end for the toolkit modules.
// Every run echoes its resolved config; JSON schema is versioned.

#include "CLI11.hpp"
#include "json.hpp"

#include "fracpoly/counting.hpp"
#include "fracpoly/expsum.hpp"
#include "fracpoly/rational.hpp"
#include "fracpoly/search.hpp"
#include "fracpoly/sieve.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace fracpoly;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

Rational parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(Integer(s));
    std::string t = s;
    bool neg = !t.empty() && t[0] == '-';
    if (neg) t = t.substr(1);
    dot = t.find('.');
    Integer num = dot == 0 ? Integer(0) : Integer(t.substr(0, dot));
    Integer den = 1;
    for (std::size_t i = dot + 1; i < t.size(); ++i) {
        if (t[i] < '0' || t[i] > '9') throw DomainError("bad rational literal: " + s);
        num = num * 10 + (t[i] - '0');
        den *= 10;
    }
    return Rational(neg ? -num : num, den);
}

std::vector<Rational> parse_rat_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& t : split_list(s)) out.push_back(parse_rat(t));
    return out;
}

IntPoly parse_int_poly(const std::string& s) {
    IntPoly g;
    for (const auto& t : split_list(s)) g.u.emplace_back(t);
    return g;
}

std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

json sched_json(const ParamSchedule& s) {
    json j;
    j["N"] = s.N;
    j["k"] = s.k;
    j["monomial"] = s.monomial;
    j["J"] = s.J;
    j["rho"] = rat_str(s.rho_value);
    j["rho_value"] = s.rho_value.convert_to<double>();
    j["epsilon"] = s.epsilon;
    j["eta"] = s.eta;
    j["L1"] = s.L1;
    j["L"] = s.L;
    j["delta"] = s.delta;
    j["q_lo"] = s.q_lo;
    j["q_hi"] = s.q_hi;
    j["l_window_ok"] = s.l_window_ok;
    return j;
}

json report_json(const CountReport& r) {
    json j;
    j["bound_name"] = r.bound_name;
    j["exact_count"] = r.exact_count;
    j["bound_value"] = r.bound_value;
    j["ratio"] = r.ratio;
    j["applicable"] = r.applicable;
    j["hard_pass"] = r.hard_pass;
    return j;
}

json cplx_json(const Cplx& c) {
    json j;
    j["re"] = c.re.convert_to<double>();
    j["im"] = c.im.convert_to<double>();
    j["abs"] = c.abs();
    return j;
}

json experiment_json(const ExperimentReport& r) {
    json j;
    j["value"] = r.value;
    j["bound"] = r.bound;
    j["ratio"] = r.ratio;
    j["terms"] = r.terms;
    j["ell_max"] = r.ell_max;
    j["range_ok"] = r.range_ok;
    j["diagonal_quadruples"] = r.diagonal_quadruples;
    j["seed_a"] = r.seed_a;
    j["seed_b"] = r.seed_b;
    return j;
}

struct Output {
    std::string format = "json";
    int threads = 1;
    long long seed = 0;
    std::chrono::steady_clock::time_point start;
    bool printed = false;

    void print(const std::string& sub, const json& config, const json& result,
               const std::vector<std::string>& header = {},
               std::vector<std::vector<std::string>> rows = {}) {
        printed = true;
        if (format == "csv") {
            std::vector<std::string> hdr = header;
            if (hdr.empty()) {
                hdr = {"key", "value"};
                for (auto& [k, v] : result.items()) {
                    if (v.is_structured()) continue;
                    std::string cell = v.is_string() ? v.get<std::string>()
                                       : v.is_number_float() ? fmt17(v.get<double>())
                                                             : v.dump();
                    rows.push_back({k, cell});
                }
            }
            for (std::size_t i = 0; i < hdr.size(); ++i)
                std::cout << (i ? "," : "") << hdr[i];
            std::cout << "\n";
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < row.size(); ++i)
                    std::cout << (i ? "," : "") << row[i];
                std::cout << "\n";
            }
            return;
        }
        json doc;
        doc["schema"] = "fracpoly/1";
        doc["subcommand"] = sub;
        doc["format"] = format;
        doc["threads"] = threads;
        doc["seed"] = seed;
        doc["config"] = config;
        doc["result"] = result;
        doc["runtime_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                  start)
                .count();
        std::cout << doc.dump(2) << "\n";
    }
};

int error_exit(const std::string& code, const std::string& message, int rc,
               json extra = json::object()) {
    json doc;
    doc["schema"] = "fracpoly/1";
    doc["error"]["code"] = code;
    doc["error"]["message"] = message;
    for (auto& [k, v] : extra.items()) doc["error"][k] = v;
    std::cout << doc.dump(2) << "\n";
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    Output out;
    out.start = std::chrono::steady_clock::now();

    CLI::App app{"fracpoly: fractional parts of polynomials over the primes, desk-scale checks"};
    app.require_subcommand(1);
    app.set_config("--config");
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", out.threads, "worker thread count")
        ->envname("FRACPOLY_THREADS")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", out.seed, "global seed echoed in reports");

    // shared option storage; each subcommand binds the fields it uses
    std::string alpha_s, qmax_s = "1000000", Z_s = "2", X_s = "2", coeffs_s, G_s, ell_s = "1";
    long long N = 1000;
    int k = 2;
    bool general = false, closed_open = false, cochrane = false, use_alpha_set = false;
    double eps = 0.01, eta = -1, tol = 1e-5, c = 0.1842, u_arg = 2.5, z = 2, z1 = 2, z2 = 4;
    double nu = 0.1, n2eta = 1.0, alpha_exp = 4.0 / 13.0, beta_exp = 1.0 / 13.0, rho_arg = -1;
    long long Y = 1, D = 1, s_arg = 1, a_arg = 1, q_arg = 2, d_arg = 1, L_arg = 1, B_arg = 1;
    long long W = 2, lo = 0, hi = 0, S0 = 1, S1 = 1, d0 = 1, d1 = 1, gcdcap = 1;
    long long pmax = 100, seed1 = 42, seed2 = 2, opcap = 200000000, maxnodes = 80000000;
    long long cap = 100000000, u_cong = 0;
    std::string m_s = "1", elements_s;

    auto interval = [&] { return closed_open ? Interval::ClosedOpen : Interval::OpenClosed; };
    auto pick_convergent = [&](const AlphaSpec& al, const Integer& qm) {
        auto cv = cf_convergents(al, qm);
        if (cv.empty()) throw DomainError("no convergent with q <= qmax");
        return cv.back();
    };

    // ---- convergents ----
    auto* sc_conv = app.add_subcommand("convergents", "continued fraction convergents");
    sc_conv->fallthrough();
    sc_conv->add_option("--alpha", alpha_s, "sqrt:2 | surd:(p+r*sqrtD)/s | dec:..<bits=..> | rat:p/q")
        ->required();
    sc_conv->add_option("--qmax", qmax_s, "largest denominator");
    sc_conv->callback([&] {
        auto al = AlphaSpec::parse(alpha_s);
        auto cv = cf_convergents(al, Integer(qmax_s));
        json cfg{{"alpha", al.str()}, {"qmax", qmax_s}};
        json res;
        res["count"] = cv.size();
        res["convergents"] = json::array();
        std::vector<std::vector<std::string>> rows;
        for (const auto& v : cv) {
            res["convergents"].push_back({{"a", v.a.str()}, {"q", v.q.str()}});
            rows.push_back({v.a.str(), v.q.str()});
        }
        out.print("convergents", cfg, res, {"a", "q"}, rows);
    });

    // ---- schedule ----
    auto* sc_sched = app.add_subcommand("schedule", "derived parameters for N");
    sc_sched->fallthrough();
    sc_sched->add_option("--N", N)->required();
    sc_sched->add_option("--k", k);
    sc_sched->add_flag("--general", general, "general polynomial class (default monomial)");
    sc_sched->add_option("--eps", eps);
    sc_sched->add_option("--eta", eta, "defaults to eps/1000");
    sc_sched->callback([&] {
        auto s = schedule(N, k, !general, eps,
                          eta > 0 ? std::optional<double>(eta) : std::nullopt);
        json cfg{{"N", N}, {"k", k}, {"monomial", !general}, {"eps", eps}, {"eta", s.eta}};
        out.print("schedule", cfg, sched_json(s));
    });

    // ---- inequalities ----
    auto* sc_ineq = app.add_subcommand("inequalities", "rho consistency inequalities");
    sc_ineq->fallthrough();
    sc_ineq->add_option("--k", k);
    sc_ineq->add_flag("--general", general);
    sc_ineq->callback([&] {
        auto checks = verify_rho_inequalities(k, !general);
        json cfg{{"k", k}, {"monomial", !general}};
        json res;
        res["all_pass"] = true;
        res["checks"] = json::array();
        std::vector<std::vector<std::string>> rows;
        for (const auto& ch : checks) {
            if (!ch.pass) res["all_pass"] = false;
            res["checks"].push_back({{"name", ch.name},
                                     {"lhs", rat_str(ch.lhs)},
                                     {"rhs", rat_str(ch.rhs)},
                                     {"strict", ch.strict},
                                     {"pass", ch.pass},
                                     {"margin", ch.margin}});
            rows.push_back({ch.name, rat_str(ch.lhs), rat_str(ch.rhs), ch.pass ? "1" : "0",
                            fmt17(ch.margin)});
        }
        out.print("inequalities", cfg, res, {"name", "lhs", "rhs", "pass", "margin"}, rows);
    });

    // ---- count-nk ----
    auto* sc_nk = app.add_subcommand("count-nk", "N_k small-value count");
    sc_nk->fallthrough();
    sc_nk->add_option("--k", k);
    sc_nk->add_option("--Y", Y)->required();
    sc_nk->add_option("--D", D);
    sc_nk->add_option("--Z", Z_s);
    sc_nk->add_option("--s", s_arg);
    sc_nk->add_option("--a", a_arg);
    sc_nk->add_option("--q", q_arg)->required();
    sc_nk->add_option("--N", N, "enters the k=3 bound only");
    sc_nk->add_option("--eta", eta, "emit lemma bounds when set");
    sc_nk->add_flag("--closed-open", closed_open, "[Y,2Y) dyadic convention");
    sc_nk->callback([&] {
        NkQuery q;
        q.k = k;
        q.Y = static_cast<u64>(Y);
        q.D = static_cast<u64>(D);
        q.Z = parse_rat(Z_s);
        q.s = static_cast<u64>(s_arg);
        q.a = a_arg;
        q.q = static_cast<u64>(q_arg);
        q.conv = interval();
        u64 count = count_Nk(q);
        json cfg{{"k", k}, {"Y", Y}, {"D", D}, {"Z", Z_s}, {"s", s_arg},
                 {"a", a_arg}, {"q", q_arg}, {"convention", closed_open ? "[Y,2Y)" : "(Y,2Y]"}};
        json res;
        res["count"] = count;
        if (eta > 0) {
            cfg["eta"] = eta;
            cfg["N"] = N;
            res["bounds"] = json::array();
            for (const auto& r : check_Nk_bounds(q, eta, static_cast<u64>(N)))
                res["bounds"].push_back(report_json(r));
        }
        out.print("count-nk", cfg, res);
    });

    // ---- count-mk ----
    auto* sc_mk = app.add_subcommand("count-mk", "M_k count over the A-set");
    sc_mk->fallthrough();
    sc_mk->add_option("--k", k);
    sc_mk->add_option("--Y", Y)->required();
    sc_mk->add_option("--Z", Z_s);
    sc_mk->add_option("--S0", S0);
    sc_mk->add_option("--S1", S1);
    sc_mk->add_option("--a", a_arg);
    sc_mk->add_option("--q", q_arg)->required();
    sc_mk->add_option("--gcdcap", gcdcap);
    sc_mk->add_option("--N", N);
    sc_mk->add_option("--eta", eta, "emit bounds when set");
    sc_mk->add_option("--rho", rho_arg, "defaults to the schedule rho for k");
    sc_mk->add_flag("--closed-open", closed_open);
    sc_mk->callback([&] {
        MkQuery q;
        q.k = k;
        q.Y = static_cast<u64>(Y);
        q.Z = parse_rat(Z_s);
        q.S0 = static_cast<u64>(S0);
        q.S1 = static_cast<u64>(S1);
        q.a = a_arg;
        q.q = static_cast<u64>(q_arg);
        q.gcd_cap = static_cast<u64>(gcdcap);
        q.conv = interval();
        auto mc = count_Mk(q);
        json cfg{{"k", k}, {"Y", Y}, {"Z", Z_s}, {"S0", S0}, {"S1", S1},
                 {"a", a_arg}, {"q", q_arg}, {"gcdcap", gcdcap}};
        json res;
        res["count"] = mc.count;
        res["a_set_empty"] = mc.a_set_empty;
        if (eta > 0) {
            double rho_d = rho_arg > 0
                               ? rho_arg
                               : rho(k, j_invariant(k, !general)).convert_to<double>();
            cfg["eta"] = eta;
            cfg["N"] = N;
            cfg["rho"] = rho_d;
            auto b = check_Mk_bounds(q, eta, static_cast<u64>(N), rho_d);
            res["cond_2_5"] = b.cond_2_5;
            res["bounds"] = json::array();
            for (const auto& r : b.reports) res["bounds"].push_back(report_json(r));
        }
        out.print("count-mk", cfg, res);
    });

    // ---- enum-a ----
    auto* sc_ea = app.add_subcommand("enum-a", "members of the squarefull/squarefree set");
    sc_ea->fallthrough();
    sc_ea->add_option("--S0", S0)->required();
    sc_ea->add_option("--S1", S1)->required();
    sc_ea->add_option("--d0", d0);
    sc_ea->add_option("--d1", d1);
    sc_ea->add_option("--cap", cap);
    sc_ea->add_option("--N", N, "emit the Lemma 4 report when set > 0");
    sc_ea->add_option("--eta", eta);
    sc_ea->callback([&] {
        ASetQuery q;
        q.S0 = static_cast<u64>(S0);
        q.S1 = static_cast<u64>(S1);
        q.d0 = static_cast<u64>(d0);
        q.d1 = static_cast<u64>(d1);
        auto members = enumerate_A(q, static_cast<u64>(cap));
        json cfg{{"S0", S0}, {"S1", S1}, {"d0", d0}, {"d1", d1}, {"cap", cap}};
        json res;
        res["count"] = members.size();
        res["members"] = members;
        if (eta > 0) {
            cfg["N"] = N;
            cfg["eta"] = eta;
            res["lemma4"] =
                report_json(check_lemma4(q, static_cast<u64>(N), eta, static_cast<u64>(cap)));
        }
        std::vector<std::vector<std::string>> rows;
        for (u64 m : members) rows.push_back({std::to_string(m)});
        out.print("enum-a", cfg, res, {"s"}, rows);
    });

    // ---- lemma6 ----
    auto* sc_l6 = app.add_subcommand("lemma6", "congruence count against the constant-1 bound");
    sc_l6->fallthrough();
    sc_l6->add_option("--u", u_cong)->required();
    sc_l6->add_option("--d", d_arg)->required();
    sc_l6->add_option("--L", L_arg)->required();
    sc_l6->add_option("--B", B_arg)->required();
    sc_l6->callback([&] {
        auto r = check_lemma6(u_cong, static_cast<u64>(d_arg), static_cast<u64>(L_arg),
                              static_cast<u64>(B_arg));
        json cfg{{"u", u_cong}, {"d", d_arg}, {"L", L_arg}, {"B", B_arg}};
        out.print("lemma6", cfg, report_json(r));
    });

    // ---- lemma10 ----
    auto* sc_l10 = app.add_subcommand("lemma10", "quadratic pair count");
    sc_l10->fallthrough();
    sc_l10->add_option("--W", W);
    sc_l10->add_option("--X", X_s);
    sc_l10->add_option("--Y", Y)->required();
    sc_l10->add_option("--a", a_arg);
    sc_l10->add_option("--q", q_arg)->required();
    sc_l10->add_option("--eta", eta);
    sc_l10->add_flag("--closed-open", closed_open);
    sc_l10->callback([&] {
        PairQuery q;
        q.W = static_cast<u64>(W);
        q.X = parse_rat(X_s);
        q.Y = static_cast<u64>(Y);
        q.a = a_arg;
        q.q = static_cast<u64>(q_arg);
        q.conv = interval();
        double e = eta > 0 ? eta : 1e-3;
        auto r = check_lemma10(q, e);
        json cfg{{"W", W}, {"X", X_s}, {"Y", Y}, {"a", a_arg}, {"q", q_arg}, {"eta", e}};
        json res = report_json(r);
        res["pairs"] = count_pairs_quadratic(q);
        out.print("lemma10", cfg, res);
    });

    // ---- expsum ----
    auto* sc_es = app.add_subcommand("expsum", "complete exponential sum S(s, ell G)");
    sc_es->fallthrough();
    sc_es->add_option("--s", s_arg)->required();
    sc_es->add_option("--G", G_s, "coefficients u1,u2,... of G(x)=u1 x+...+uk x^k")->required();
    sc_es->add_option("--ell", ell_s);
    sc_es->add_flag("--cochrane", cochrane, "also check the (3.8) bound");
    sc_es->callback([&] {
        IntPoly G = parse_int_poly(G_s);
        Integer ell(ell_s);
        auto v = complete_sum(static_cast<u64>(s_arg), G, ell);
        json cfg{{"s", s_arg}, {"G", G_s}, {"ell", ell_s}};
        json res = cplx_json(v);
        res["normalized"] = v.abs() / static_cast<double>(s_arg);
        if (cochrane) {
            auto b = cochrane_check(static_cast<u64>(s_arg), G,
                                    ell.convert_to<u64>(), G.degree());
            res["cochrane"] = {{"name", b.name},
                              {"lhs", b.lhs},
                              {"bound", b.bound},
                              {"ratio", b.ratio},
                              {"applicable", b.applicable}};
        }
        out.print("expsum", cfg, res);
    });

    // ---- weyl ----
    auto* sc_wy = app.add_subcommand("weyl", "Weyl sum over an integer interval");
    sc_wy->fallthrough();
    sc_wy->add_option("--coeffs", coeffs_s, "c1,...,ck rationals, f = c1 x + ... + ck x^k")
        ->required();
    sc_wy->add_option("--lo", lo)->required();
    sc_wy->add_option("--hi", hi)->required();
    sc_wy->add_option("--m", m_s);
    sc_wy->callback([&] {
        auto f = RealPoly::from_rationals(parse_rat_list(coeffs_s));
        auto w = weyl_sum(f, lo, hi, Integer(m_s));
        json cfg{{"coeffs", coeffs_s}, {"lo", lo}, {"hi", hi}, {"m", m_s}};
        json res = cplx_json(w.value);
        res["error_bound"] = w.error_bound;
        res["terms"] = w.terms;
        out.print("weyl", cfg, res);
    });

    // ---- lemma7 ----
    auto* sc_l7 = app.add_subcommand("lemma7", "decomposition error of (3.2)");
    sc_l7->fallthrough();
    sc_l7->add_option("--gamma", coeffs_s, "gamma_1,...,gamma_k rationals")->required();
    sc_l7->add_option("--s", s_arg)->required();
    sc_l7->add_option("--G", G_s, "u_1,...,u_k integers")->required();
    sc_l7->add_option("--lo", lo)->required();
    sc_l7->add_option("--hi", hi)->required();
    sc_l7->add_option("--L", L_arg)->required();
    sc_l7->add_option("--n2eta", n2eta);
    sc_l7->add_option("--tol", tol);
    sc_l7->callback([&] {
        auto gamma = RealPoly::from_rationals(parse_rat_list(coeffs_s));
        auto r = lemma7_error(gamma, static_cast<u64>(s_arg), parse_int_poly(G_s), lo, hi,
                              static_cast<u64>(L_arg), n2eta, tol);
        json cfg{{"gamma", coeffs_s}, {"s", s_arg}, {"G", G_s}, {"lo", lo},
                 {"hi", hi}, {"L", L_arg}, {"n2eta", n2eta}, {"tol", tol}};
        json res;
        res["lhs"] = r.lhs;
        res["rhs_2k1"] = r.rhs_2k1;
        res["rhs_general"] = r.rhs_general;
        res["cond_31"] = r.cond_31;
        res["per_ell"] = r.per_ell;
        out.print("lemma7", cfg, res);
    });

    // ---- type1 / type2 ----
    auto add_experiment = [&](const char* name, bool type2) {
        auto* sc = app.add_subcommand(name, type2 ? "Type II bilinear experiment"
                                                  : "Type I smooth-variable experiment");
        sc->fallthrough();
        sc->add_option("--N", N)->required();
        sc->add_option("--k", k);
        sc->add_flag("--general", general);
        sc->add_option("--eps", eps);
        sc->add_option("--alpha", alpha_s)->required();
        sc->add_option("--qmax", qmax_s);
        sc->add_option("--Y", Y)->required();
        if (type2) {
            sc->add_option("--aseed", seed1);
            sc->add_option("--bseed", seed2);
        } else {
            sc->add_option("--coeff-seed", seed1);
        }
        sc->add_option("--opcap", opcap);
        sc->callback([&, type2, name] {
            auto sched_v = schedule(N, k, !general, eps);
            auto conv = pick_convergent(AlphaSpec::parse(alpha_s), Integer(qmax_s));
            auto rep = type2
                           ? type_II_experiment(sched_v, conv, static_cast<u64>(Y),
                                                static_cast<u64>(seed1),
                                                static_cast<u64>(seed2), static_cast<u64>(opcap))
                           : type_I_experiment(sched_v, conv, static_cast<u64>(Y),
                                               static_cast<u64>(seed1), static_cast<u64>(opcap));
            json cfg{{"N", N}, {"k", k}, {"monomial", !general}, {"eps", eps},
                     {"alpha", alpha_s}, {"qmax", qmax_s}, {"Y", Y}, {"opcap", opcap}};
            cfg["convergent"] = {{"a", conv.a.str()}, {"q", conv.q.str()}};
            cfg["schedule"] = sched_json(sched_v);
            out.print(name, cfg, experiment_json(rep));
        });
    };
    add_experiment("type1", false);
    add_experiment("type2", true);

    // ---- omega ----
    auto* sc_om = app.add_subcommand("omega", "Buchstab function");
    sc_om->fallthrough();
    sc_om->add_option("--u", u_arg)->required();
    sc_om->add_option("--tol", tol);
    sc_om->callback([&] {
        double w = buchstab_omega(u_arg, tol < 1 ? std::max(tol, 1e-12) : 1e-8);
        json cfg{{"u", u_arg}, {"tol", tol}};
        out.print("omega", cfg, json{{"omega", w}});
    });

    // ---- integral ----
    auto* sc_in = app.add_subcommand("integral", "sieve integral over the (5.3) region");
    sc_in->fallthrough();
    sc_in->add_option("--c", c)->required();
    sc_in->add_option("--tol", tol);
    sc_in->add_option("--maxnodes", maxnodes);
    sc_in->callback([&] {
        auto r = sieve_integral(RegionSpec{c}, tol, static_cast<u64>(maxnodes));
        json cfg{{"c", c}, {"tol", tol}, {"maxnodes", maxnodes}};
        json res;
        res["value"] = r.value;
        res["error"] = r.error;
        res["lt_one"] = r.value + r.error < 1.0;
        res["nodes"] = r.nodes;
        out.print("integral", cfg, res);
    });

    // ---- critical ----
    auto* sc_cr = app.add_subcommand("critical", "critical constant with integral = 1");
    sc_cr->fallthrough();
    sc_cr->add_option("--tol", tol);
    sc_cr->callback([&] {
        auto r = critical_constant(tol);
        json cfg{{"tol", tol}};
        json res;
        res["c_star"] = r.c_star;
        res["integral_at_c_star"] = r.integral_at_c_star;
        res["error"] = r.error;
        res["nodes"] = r.nodes;
        out.print("critical", cfg, res);
    });

    // ---- sift ----
    auto* sc_sf = app.add_subcommand("sift", "S(E, z) for B(N) or an explicit set");
    sc_sf->fallthrough();
    sc_sf->add_option("--N", N, "use E = B(N) = (N/2, N]");
    sc_sf->add_option("--z", z)->required();
    sc_sf->add_option("--elements", elements_s, "comma list overriding B(N)");
    sc_sf->callback([&] {
        SiftSet E;
        if (!elements_s.empty()) {
            std::vector<u64> vals;
            for (const auto& t : split_list(elements_s)) vals.push_back(std::stoull(t));
            E = SiftSet::from(std::move(vals));
        } else {
            E = SiftSet::interval_B(static_cast<u64>(N));
        }
        u64 cnt = sift(E, z);
        json cfg{{"z", z}};
        if (elements_s.empty()) cfg["N"] = N;
        else cfg["elements"] = elements_s;
        json res;
        res["sifted"] = cnt;
        res["set_size"] = E.elements.size();
        res["label"] = E.label;
        out.print("sift", cfg, res);
    });

    // ---- identity ----
    auto* sc_id = app.add_subcommand("identity", "Buchstab identity check on B(N)");
    sc_id->fallthrough();
    sc_id->add_option("--N", N)->required();
    sc_id->add_option("--z1", z1)->required();
    sc_id->add_option("--z2", z2)->required();
    sc_id->callback([&] {
        auto r = buchstab_identity_check(SiftSet::interval_B(static_cast<u64>(N)), z1, z2);
        json cfg{{"N", N}, {"z1", z1}, {"z2", z2}};
        json res;
        res["lhs"] = r.lhs;
        res["rhs"] = r.rhs;
        res["equal"] = r.equal;
        out.print("identity", cfg, res);
    });

    // ---- decompose ----
    auto* sc_dc = app.add_subcommand("decompose", "two-round S1-S4 decomposition");
    sc_dc->fallthrough();
    sc_dc->add_option("--N", N)->required();
    sc_dc->add_option("--alpha-exp", alpha_exp);
    sc_dc->add_option("--beta-exp", beta_exp);
    sc_dc->add_flag("--set-a", use_alpha_set, "decompose A instead of B(N)");
    sc_dc->add_option("--alpha", alpha_s, "leading coefficient for A");
    sc_dc->add_option("--k", k);
    sc_dc->add_option("--eps", eps);
    sc_dc->add_option("--qmax", qmax_s);
    sc_dc->callback([&] {
        json cfg{{"N", N}, {"alpha_exp", alpha_exp}, {"beta_exp", beta_exp}};
        SiftSet E;
        if (use_alpha_set) {
            if (alpha_s.empty()) throw DomainError("--set-a requires --alpha");
            auto sched_v = schedule(N, k, !general, eps);
            auto conv = pick_convergent(AlphaSpec::parse(alpha_s), Integer(qmax_s));
            auto g = FracPolynomial::rational(conv, k, {}, static_cast<u64>(N));
            E = construct_A(static_cast<u64>(N), sched_v, g);
            cfg["alpha"] = alpha_s;
            cfg["k"] = k;
            cfg["eps"] = eps;
            cfg["convergent"] = {{"a", conv.a.str()}, {"q", conv.q.str()}};
            cfg["schedule"] = sched_json(sched_v);
        } else {
            E = SiftSet::interval_B(static_cast<u64>(N));
        }
        cfg["set"] = E.label;
        auto d = decompose_S1_S4(E, static_cast<u64>(N), alpha_exp, beta_exp);
        json res;
        res["S1"] = d.S1;
        res["S2"] = d.S2;
        res["S3"] = d.S3;
        res["S4"] = d.S4;
        res["combination"] = d.combination();
        res["primes_in_E"] = d.primes_in_E;
        res["identity_holds"] = d.identity_holds;
        res["set_size"] = E.elements.size();
        out.print("decompose", cfg, res);
    });

    // ---- search ----
    auto* sc_se = app.add_subcommand("search", "prime records for ||f(p)|| < p^-nu");
    sc_se->fallthrough();
    sc_se->add_option("--alpha", alpha_s)->required();
    sc_se->add_option("--k", k);
    sc_se->add_option("--nu", nu)->required();
    sc_se->add_option("--pmax", pmax)->required();
    sc_se->callback([&] {
        auto f = FracPolynomial::irrational(AlphaSpec::parse(alpha_s), k, {},
                                            static_cast<u64>(pmax));
        auto recs = prime_records(f, nu, static_cast<u64>(pmax));
        json cfg{{"alpha", alpha_s}, {"k", k}, {"nu", nu}, {"pmax", pmax}};
        json res;
        res["records"] = json::array();
        std::vector<std::vector<std::string>> rows;
        u64 qualifying = 0;
        for (const auto& r : recs) {
            if (r.is_record) ++qualifying;
            res["records"].push_back({{"p", r.p},
                                      {"fracpart", r.fracpart},
                                      {"threshold", r.threshold},
                                      {"normalized", r.normalized},
                                      {"is_record", r.is_record}});
            rows.push_back({std::to_string(r.p), fmt17(r.fracpart), fmt17(r.threshold),
                            fmt17(r.normalized), r.is_record ? "1" : "0"});
        }
        res["qualifying"] = qualifying;
        out.print("search", cfg, res,
                  {"p", "fracpart", "threshold", "normalized", "is_record"}, rows);
    });

    // ---- density ----
    auto* sc_de = app.add_subcommand("density", "primes in A versus 2 delta primes in B");
    sc_de->fallthrough();
    sc_de->add_option("--N", N)->required();
    sc_de->add_option("--k", k);
    sc_de->add_flag("--general", general);
    sc_de->add_option("--eps", eps);
    sc_de->add_option("--alpha", alpha_s)->required();
    sc_de->add_option("--qmax", qmax_s);
    sc_de->callback([&] {
        auto sched_v = schedule(N, k, !general, eps);
        auto conv = pick_convergent(AlphaSpec::parse(alpha_s), Integer(qmax_s));
        auto g = FracPolynomial::rational(conv, k, {}, static_cast<u64>(N));
        auto rep = density_report(static_cast<u64>(N), sched_v, g);
        json cfg{{"N", N}, {"k", k}, {"monomial", !general}, {"eps", eps},
                 {"alpha", alpha_s}, {"qmax", qmax_s}};
        cfg["convergent"] = {{"a", conv.a.str()}, {"q", conv.q.str()}};
        cfg["schedule"] = sched_json(sched_v);
        json res;
        res["primes_in_A"] = rep.primes_in_A;
        res["primes_in_B"] = rep.primes_in_B;
        res["delta"] = rep.delta;
        res["two_delta_primes_in_B"] = rep.two_delta_primes_in_B;
        res["ratio"] = rep.ratio;
        out.print("density", cfg, res);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const CfPrecisionError& e) {
        json extra;
        extra["certified"] = json::array();
        for (const auto& v : e.certified)
            extra["certified"].push_back({{"a", v.a.str()}, {"q", v.q.str()}});
        return error_exit("precision", e.what(), 3, extra);
    } catch (const PrecisionError& e) {
        return error_exit("precision", e.what(), 3,
                          json{{"required_bits", e.required_bits}});
    } catch (const BudgetError& e) {
        return error_exit("budget", e.what(), 3,
                          json{{"best_estimate", e.best_estimate},
                               {"achieved_error", e.achieved_error}});
    } catch (const DomainError& e) {
        return error_exit("domain", e.what(), 2);
    } catch (const std::exception& e) {
        return error_exit("internal", e.what(), 2);
    }
    return 0;
}

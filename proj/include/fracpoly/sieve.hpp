#pragma once

#include "fracpoly/numeric.hpp"
#include "fracpoly/numtheory.hpp"

#include <string>
#include <vector>

namespace fracpoly {

// Buchstab function omega: 1/u on [1,2], (u omega(u))' = omega(u-1) for
// u >= 2. Closed forms on [1,3]; marched grid with cubic interpolation
// beyond. Immutable after construction.
class BuchstabTable {
public:
    explicit BuchstabTable(double u_max = 16.0, double h = 1.0 / 512.0);

    double operator()(double u) const;

    double step() const { return h_; }
    double u_max() const { return u_max_; }
    const std::vector<double>& values() const { return values_; }  // omega on the grid from u=1
    double certificate() const { return cert_; }

private:
    double h_;
    double u_max_;
    std::vector<double> values_;  // omega at 1 + i*h
    double cert_;
};

// Shared table, built on first use.
const BuchstabTable& buchstab_table();

double buchstab_omega(double u, double tol = 1e-8);

struct RegionSpec {
    double c = 0.1842;  // lower bound on y (and hence on x)

    void validate() const;
};

struct IntegralResult {
    double value = 0;
    double error = 0;  // certified bound
    u64 nodes = 0;
};

// Integral of omega((1-x-y)/y) / (x y^2) over {c < y < x < 1/2, x + 2y < 1}.
IntegralResult sieve_integral(const RegionSpec& region, double tol, u64 max_nodes = 80000000);

struct CriticalResult {
    double c_star = 0;
    double integral_at_c_star = 0;
    double error = 0;
    u64 nodes = 0;
};

// Bisection for sieve_integral(c) = 1 on [0.15, 0.25].
CriticalResult critical_constant(double tol);

struct SiftSet {
    std::vector<u64> elements;  // sorted, duplicate-free
    std::string label = "custom";

    static SiftSet interval_B(u64 N);  // (N/2, N]
    static SiftSet from(std::vector<u64> values, std::string label = "custom");

    SiftSet divide_by(u64 d) const;  // E_d = {n : d*n in E}
};

// S(E, z): elements of E with no prime factor < z.
u64 sift(const SiftSet& E, double z);

struct IdentityCheck {
    u64 lhs = 0;  // S(E, z2)
    u64 rhs = 0;  // S(E, z1) - sum over primes
    bool equal = false;
};

IdentityCheck buchstab_identity_check(const SiftSet& E, double z1, double z2);

struct Decomposition {
    u64 S1 = 0, S2 = 0, S3 = 0, S4 = 0;
    u64 primes_in_E = 0;
    bool identity_holds = false;  // S1 - S2 - S3 + S4 == primes_in_E
    long long combination() const {
        return static_cast<long long>(S1) - static_cast<long long>(S2) -
               static_cast<long long>(S3) + static_cast<long long>(S4);
    }
};

// Two rounds of the Buchstab identity at z = N^alpha, N^(alpha+beta),
// (2N)^(1/2); the combination equals the number of primes in E exactly.
Decomposition decompose_S1_S4(const SiftSet& E, u64 N, double alpha_exp, double beta_exp);

struct ComparisonRow {
    std::string name;
    double a_side = 0;       // count on A
    double b_side = 0;       // 2 delta * count on B
    double difference = 0;
    double scale = 0;        // delta * N^(1 - eta/2)
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    double delta = 0;
    double prime_ratio = 0;  // #{p in A} / (2 delta #{p in B})
};

// Compare the sifted counts of A against 2*delta times those of B = (N/2, N].
ComparisonReport compare_AB(const SiftSet& A, u64 N, double delta, double alpha_exp,
                            double beta_exp, double eta);

}  // namespace fracpoly

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace fracpoly {

// Gauss-Legendre nodes/weights on [-1,1], generated by Newton iteration on
// the Legendre recurrence (machine precision, no hardcoded tables).
struct GLRule {
    std::vector<double> x;
    std::vector<double> w;
};

inline GLRule gauss_legendre(int n) {
    GLRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = x;
        rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

inline const GLRule& gl7() {
    static const GLRule r = gauss_legendre(7);
    return r;
}

inline const GLRule& gl15() {
    static const GLRule r = gauss_legendre(15);
    return r;
}

}  // namespace fracpoly

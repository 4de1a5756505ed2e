#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "catlab/parallel.hpp"

namespace catlab::surgery {

// Cached excess constant of the unit n-catenoid (n in [3, 6]).
double excess_constant_cached(int n);

// Catenoid-neck area gain over two spanning disks at ball radius R >= 4r.
double neck_gain(int n, double r, double R);

// One-sided leaf-area deficit at separation d = 10 r |log r| on the a-family
// member: Omega_n - leaf_area(n, a, d). Requires 0 < r < 1/e and d < a/2.
double leaf_loss(int n, double a, double r);

struct CertificateRow {
    double r = 0.0;
    double R = 0.0;
    double gain = 0.0;
    double loss = 0.0;
    double margin = 0.0;  // gain - 2 loss - A_n r^n / 4 (n >= 3); gain - 2 loss (n = 2)
};

struct SurgeryCertificate {
    int n = 2;
    double a = 1.0;
    std::string neck_rule;
    double r_star = 0.0;  // largest grid r with the conclusion holding below it
    std::vector<CertificateRow> rows;  // descending in r
    bool verdict = false;              // r_star > min(r_grid)
};

// Evaluates the gain-vs-loss comparison across the grid. The conclusion
// tested below r_star is margin > 0 for n >= 3 and
// gain - 2 loss > pi r^2 (log(R/r) - 1) for n = 2.
SurgeryCertificate certify(int n, double a, const std::function<double(double)>& neck_rule,
                           std::span<const double> r_grid,
                           ExecPolicy policy = ExecPolicy::parallel);

std::string certificate_to_json(const SurgeryCertificate& cert);

}  // namespace catlab::surgery

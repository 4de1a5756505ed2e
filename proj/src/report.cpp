#include "catlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "catlab/catenoid.hpp"
#include "catlab/errors.hpp"
#include "catlab/format.hpp"
#include "catlab/monotone.hpp"
#include "catlab/revolution.hpp"
#include "catlab/surgery.hpp"
#include "catlab/two_sheet.hpp"

namespace catlab::report {

namespace {

namespace cat = catlab::catenoid;
namespace rev = catlab::revolution;
namespace ts = catlab::two_sheet;
namespace mono = catlab::monotone;

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

std::vector<double> geom_grid(double lo, double hi, int points) {
    std::vector<double> g(static_cast<std::size_t>(points));
    const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo * std::pow(ratio, i);
    g.back() = hi;
    return g;
}

void add_height_checks(std::vector<Check>& out, int n, double tol) {
    if (n == 2) {
        double worst = 1e300;
        for (double t : {2.0, 10.0, 1e3, 1e6}) {
            const double h = cat::height(2, 1.0, t);
            worst = std::min({worst, h - std::log(t), std::log(2.0 * t) - h});
        }
        out.push_back({"c1.height_log_bounds",
                       "unit 2-catenoid height satisfies log t < h(t) < log 2t on {2,10,1e3,1e6}",
                       worst, 0.0, worst > 0.0});
        bool diverged = false;
        try {
            (void)cat::height_sup(2);
        } catch (const divergence_error&) {
            diverged = true;
        }
        out.push_back({"c1.height_sup_divergence", "height of the 2-catenoid grows without bound",
                       diverged ? 1.0 : 0.0, 1.0, diverged});
        return;
    }
    const double hs = cat::height_sup(n);
    if (n == 3)
        out.push_back({"c1.height_sup", "sup height of the unit 3-catenoid equals 1.31103 (1e-4)",
                       hs, 1.31103, std::abs(hs - 1.31103) <= 1e-4 * tol});
    out.push_back({"c4.neck_height_budget", "twice the sup height stays below 27/10",
                   2.0 * hs, 2.7, 2.0 * hs < 2.7});
}

void add_flux_check(std::vector<Check>& out, int n, double tol) {
    const double f = cat::two_sheet_flux(n, 1.0, 1e4);
    out.push_back({"c2.flux_limit", "normal-separation flux at s = 1e4 equals 2 (1e-3)", f, 2.0,
                   std::abs(f - 2.0) <= 1e-3 * tol});
}

void add_excess_checks(std::vector<Check>& out, int n, double tol) {
    if (n == 2) {
        bool diverged = false;
        try {
            (void)cat::excess_constant(2);
        } catch (const divergence_error&) {
            diverged = true;
        }
        out.push_back({"c3.excess_divergence", "2-catenoid ball excess grows like 2 pi log R",
                       diverged ? 1.0 : 0.0, 1.0, diverged});
        double worst = 1e300;
        for (double R : {kE, 10.0, 1e3})
            worst = std::min(worst, cat::log_excess_n2(R) - 2.0 * kPi * (std::log(R) - 1.0));
        out.push_back({"c3.log_excess", "n = 2 excess exceeds 2 pi (log R - 1) on {e, 10, 1e3}",
                       worst, 0.0, worst > 0.0});
        return;
    }
    const cat::ExcessResult ex = cat::excess_constant(n);
    const bool ok = ex.value > 1e-3 * tol && ex.window < 1e-6;
    out.push_back({"c3.excess_constant",
                   "catenoid area excess over two disks converges to a positive limit", ex.value,
                   1e-3, ok});
}

void add_family_checks(std::vector<Check>& out, int n, double tol) {
    double min_ric = 1e300;
    double worst_dist = 1e300;
    bool signs_ok = true;
    double max_degeneracy = 0.0;
    for (double a : {1.0, 2.0, 10.0}) {
        const auto rows = rev::family_table(n, a, 50);
        for (const auto& row : rows) {
            min_ric = std::min(min_ric, row.ric_min);
            if (row.t != 0.0)
                worst_dist = std::min({worst_dist, row.dist - std::abs(row.t),
                                       2.0 * std::abs(row.t) - row.dist});
            const int sign = rev::leaf_mean_curvature_sign(n, a, row.t);
            const int expect = (row.t > 1e-12) ? 1 : (row.t < -1e-12 ? -1 : 0);
            if (sign != expect) signs_ok = false;
        }
        max_degeneracy = std::max(max_degeneracy, std::abs(rev::equator_degeneracy(n, a)));
    }
    out.push_back({"c5.family_ricci", "Ricci curvature of the revolution family is non-negative",
                   min_ric, -1e-9 * tol, min_ric >= -1e-9 * tol});
    out.push_back({"c5.family_distance", "equator-to-leaf distance lies in [|t|, 2|t|]", worst_dist,
                   0.0, worst_dist >= -1e-12});
    out.push_back({"c5.family_mc_sign", "leaf mean curvature vector points away from the equator",
                   signs_ok ? 1.0 : 0.0, 1.0, signs_ok});
    out.push_back({"c5.equator_degeneracy", "Jacobi coefficient on equator constants vanishes",
                   max_degeneracy, 1e-9 * tol, max_degeneracy <= 1e-9 * tol});
}

void add_identity_checks(std::vector<Check>& out, int n, double tol) {
    if (n != 2 && n != 3 && n != 5) return;
    const ts::TwoSheetConfig cfg = ts::make_catenoid_config(n, 1.0, 4.0, 100.0, 24);
    double worst_d = 0.0;
    double worst_a = 0.0;
    for (double s : {20.0, 50.0}) {
        worst_d = std::max(worst_d, mono::derivative_identity_residual(cfg, s));
        worst_a = std::max(worst_a, mono::area_identity_residual(cfg, 4.0, s));
    }
    out.push_back({"c6.derivative_identity", "flux identity for the averaged height derivative",
                   worst_d, 1e-6 * tol, worst_d < 1e-6 * tol});
    out.push_back({"c6.area_identity", "annulus area-density identity", worst_a, 1e-6 * tol,
                   worst_a < 1e-6 * tol});
    // order-2 convergence: plain central differences at h and h/2
    numerics::DiffSpec coarse{2e-2, 1};
    numerics::DiffSpec fine{1e-2, 1};
    const double rd_c = mono::derivative_identity_residual(cfg, 50.0, coarse);
    const double rd_f = mono::derivative_identity_residual(cfg, 50.0, fine);
    const double ra_c = mono::area_identity_residual(cfg, 4.0, 50.0, coarse);
    const double ra_f = mono::area_identity_residual(cfg, 4.0, 50.0, fine);
    const double ratio = std::min(rd_c / rd_f, ra_c / ra_f);
    out.push_back({"c6.identity_convergence", "identity residuals shrink at second order", ratio,
                   3.5, ratio >= 3.5});
}

bool curvature_propagation_ok(int n) {
    const ts::SphereFoliation near_fol(n, 10.0, 0.1, 9);
    const ts::SphereFoliation far_fol(n, 100.0, 0.5, 9);
    bool broken_rejected = false;
    try {
        const ts::SphereFoliation bad(n, 1.0, 2.0, 9);
        (void)ts::curvature_propagation_check(bad);
    } catch (const regime_error&) {
        broken_rejected = true;
    }
    return ts::curvature_propagation_check(near_fol) && ts::curvature_propagation_check(far_fol) &&
           broken_rejected;
}

void add_appendix_checks(std::vector<Check>& out, int n, double tol) {
    const ts::SphereFoliation fol(n, 1.0, 0.2, 9);
    const ts::EvolutionResiduals res = ts::evolution_identity_residuals(fol, {1e-3, 3});
    out.push_back({"c7.evolution_residuals", "foliation evolution identities hold on round spheres",
                   res.max_residual, 1e-6 * tol, res.max_residual < 1e-6 * tol});
    bool prop = curvature_propagation_ok(n);
    out.push_back({"c7.curvature_propagation", "leafwise curvature stays within 2|A| + 2t",
                   prop ? 1.0 : 0.0, 1.0, prop});
    const bool ode1 = numerics::ode_bound_check(1.0, 1.0, 0.0, 1.0,
                                                [](double, double f) { return 1.0 + f; });
    const bool ode2 =
        numerics::ode_bound_check(1.0, 1.0, 1.0, 2.0, [](double, double) { return 0.0; });
    const bool ode3 = numerics::ode_bound_check(1.0, 1.0, 0.5, 3.0,
                                                [](double, double f) { return 1.0 + f - f * f; });
    out.push_back({"c7.ode_bounds", "comparison solutions stay under the exponential envelope",
                   (ode1 && ode2 && ode3) ? 1.0 : 0.0, 1.0, ode1 && ode2 && ode3});
    const ts::TwoSheetConfig cfg = ts::make_catenoid_config(n, 1.0, 10.0, 1e3, 40);
    const ts::GraphResidualReport rep = ts::minimal_graph_residual(cfg);
    double worst = -1e300;
    for (const auto& row : rep.rows) worst = std::max(worst, row.residual);
    out.push_back({"c7.minimal_graph", "graph inequality residual is non-positive for rho >= 10r",
                   worst, rep.tolerance, rep.all_nonpositive});
    const ts::TwoSheetConfig cfg2 = ts::make_catenoid_config(n, 1.0, 10.0, 1e4, 40);
    const bool lap = ts::laplace_inequality_check(cfg2);
    out.push_back({"c7.laplace_inequality", "Delta w <= w + w^3/(8 rho^4) on the grid",
                   lap ? 1.0 : 0.0, 1.0, lap});
}

void add_monotone_checks(std::vector<Check>& out, int n, double /*tol*/) {
    const double r = 1e-3;
    const ts::TwoSheetConfig cfg = ts::make_catenoid_config(n, r, 0.1, 1.0, 16);
    const std::vector<double> grid = geom_grid(0.1, 1.0, 16);
    const mono::DecreaseReport rep = mono::modified_decrease_report(cfg, grid);
    out.push_back({"c8.monotone_I_bound",
                   n == 2 ? "averaged height stays below 4 r log(s/r)"
                          : "averaged height stays below 3r",
                   rep.I_bound_ok ? 1.0 : 0.0, 1.0, rep.I_bound_ok});
    out.push_back({"c8.sup_w", "sheet separation stays under the headline height budget",
                   rep.sup_w, std::min(rep.sup_w_bound, rep.sup_w_theorem), rep.sup_w_ok});
}

void add_surgery_check(std::vector<Check>& out, int n, double /*tol*/) {
    const std::vector<double> grid = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    const surgery::SurgeryCertificate cert =
        surgery::certify(n, 1.0, [](double r) { return std::sqrt(r); }, grid);
    out.push_back({"c9.surgery_certificate",
                   "neck gain beats leaf loss below the threshold radius 1e-2", cert.r_star, 1e-2,
                   cert.verdict && cert.r_star >= 1e-2});
    if (n >= 3) {
        const double An = surgery::excess_constant_cached(n);
        double worst = 1e300;
        for (const auto& row : cert.rows)
            if (row.r < cert.r_star)
                worst = std::min(worst, row.margin / std::pow(row.r, n) - (0.25 * An - 1e-2));
        const bool ok = worst >= 0.0;
        out.push_back({"c9.margin_rate", "margin per r^n approaches a quarter of the excess constant",
                       worst, 0.0, ok});
    }
}

}  // namespace

int Report::passed() const {
    int count = 0;
    for (const auto& c : checks)
        if (c.pass) ++count;
    return count;
}

Report run_verify(int n, double tol_scale) {
    cat::require_dimension(n);
    if (!(tol_scale > 0.0)) throw std::invalid_argument("run_verify: tol_scale must be positive");
    Report rep;
    add_height_checks(rep.checks, n, tol_scale);
    add_flux_check(rep.checks, n, tol_scale);
    add_excess_checks(rep.checks, n, tol_scale);
    add_family_checks(rep.checks, n, tol_scale);
    add_identity_checks(rep.checks, n, tol_scale);
    add_appendix_checks(rep.checks, n, tol_scale);
    add_monotone_checks(rep.checks, n, tol_scale);
    add_surgery_check(rep.checks, n, tol_scale);
    std::sort(rep.checks.begin(), rep.checks.end(),
              [](const Check& a, const Check& b) { return a.id < b.id; });
    return rep;
}

std::string report_to_json(const Report& rep) {
    std::ostringstream os;
    os << "{\"checks\":[";
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        const Check& c = rep.checks[i];
        if (i) os << ",";
        os << "{\"id\":\"" << c.id << "\",\"anchor\":\"" << c.anchor
           << "\",\"value\":" << format::shortest(c.value)
           << ",\"bound\":" << format::shortest(c.bound)
           << ",\"pass\":" << (c.pass ? "true" : "false") << "}";
    }
    os << "],\"summary\":{\"total\":" << rep.total() << ",\"passed\":" << rep.passed()
       << ",\"failed\":" << rep.failed() << "}}";
    return os.str();
}

std::string report_to_csv(const Report& rep) {
    std::ostringstream os;
    os << "id,anchor,value,bound,pass\n";
    for (const Check& c : rep.checks)
        os << c.id << ",\"" << c.anchor << "\"," << format::shortest(c.value) << ","
           << format::shortest(c.bound) << "," << (c.pass ? "true" : "false") << "\n";
    return os.str();
}

}  // namespace catlab::report

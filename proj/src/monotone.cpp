#include "catlab/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "catlab/catenoid.hpp"
#include "catlab/errors.hpp"

namespace catlab::monotone {

namespace {

namespace cat = catlab::catenoid;
namespace ts = catlab::two_sheet;

void require_single_neck(const TwoSheetConfig& cfg) {
    if (cfg.kind == TwoSheetConfig::Kind::double_neck)
        throw fixture_error("monotone: multi-neck fixture not supported here");
}

void require_range(const TwoSheetConfig& cfg, double s) {
    if (cfg.nodes.empty()) return;
    const double lo = cfg.nodes.front().rho;
    const double hi = cfg.nodes.back().rho;
    if (s < lo * (1.0 - 1e-9) || s > hi * (1.0 + 1e-9))
        throw std::domain_error("monotone: s outside the configured rho range");
}

double pow_int(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

}  // namespace

double I_of_s(const TwoSheetConfig& cfg, double s) {
    require_single_neck(cfg);
    const double t = ts::t_of_rho(cfg, s);
    return std::pow(t / s, cfg.n - 1.0) * ts::w_at(cfg, t) * ts::phi_at(cfg, t);
}

double tau_of_s(const TwoSheetConfig& cfg, double s) {
    require_single_neck(cfg);
    const double t = ts::t_of_rho(cfg, s);
    return std::pow(t, cfg.n - 1.0) * ts::dw_dt_at(cfg, t) / ts::metric_at(cfg, t);
}

double F_of_s(const TwoSheetConfig& cfg, double s) {
    require_single_neck(cfg);
    const double t = ts::t_of_rho(cfg, s);
    const double phi = ts::phi_at(cfg, t);
    return cfg.n * std::pow(t, cfg.n - 1.0) * (1.0 / phi - phi) / std::pow(s, static_cast<double>(cfg.n));
}

namespace {

// cumulative int F over [s0, s], optionally skipping an excluded window
double f_integral(const TwoSheetConfig& cfg, double lo, double hi,
                  std::optional<std::pair<double, double>> exclude) {
    if (!(hi > lo)) return 0.0;
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-10;
    auto piece = [&](double a, double b) {
        if (!(b > a)) return 0.0;
        return numerics::integrate([&](double x) { return F_of_s(cfg, x); }, a, b, spec).value;
    };
    if (!exclude) return piece(lo, hi);
    const double ex_lo = exclude->first;
    const double ex_hi = exclude->second;
    return piece(lo, std::min(hi, ex_lo)) + piece(std::max(lo, ex_hi), hi);
}

}  // namespace

MonotoneTrace trace(const TwoSheetConfig& cfg, std::span<const double> s_grid, ExecPolicy policy) {
    require_single_neck(cfg);
    if (s_grid.size() < 1) throw std::invalid_argument("trace: empty s grid");
    for (std::size_t i = 0; i + 1 < s_grid.size(); ++i)
        if (!(s_grid[i] < s_grid[i + 1])) throw std::invalid_argument("trace: s grid not increasing");
    for (double s : s_grid) require_range(cfg, s);

    MonotoneTrace tr;
    tr.n = cfg.n;
    tr.r = cfg.r;
    const std::size_t m = s_grid.size();
    tr.s.assign(s_grid.begin(), s_grid.end());
    tr.I.resize(m);
    tr.tau.resize(m);
    tr.F.resize(m);
    tr.I_mod.resize(m);
    tr.tau_mod.resize(m);
    tr.dI_ds.resize(m);
    tr.dtau_ds.resize(m);

    for_each_index(policy, static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t idx) {
        const std::size_t i = static_cast<std::size_t>(idx);
        const double s = tr.s[i];
        tr.I[i] = I_of_s(cfg, s);
        tr.tau[i] = tau_of_s(cfg, s);
        tr.F[i] = F_of_s(cfg, s);
        numerics::DiffSpec d;
        d.base_step = 0.01 * s;
        tr.dI_ds[i] = numerics::derivative([&](double x) { return I_of_s(cfg, x); }, s, d).value;
        tr.dtau_ds[i] = numerics::derivative([&](double x) { return tau_of_s(cfg, x); }, s, d).value;
    });

    // F-integral accumulated serially along the grid (single-neck: no window).
    const double r = cfg.r;
    double fint = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i > 0) fint += f_integral(cfg, tr.s[i - 1], tr.s[i], std::nullopt);
        const double s = tr.s[i];
        if (cfg.n == 2) {
            const double lg = std::log(s / r);
            tr.I_mod[i] = tr.I[i] - 3.0 * r * lg - 2.0 * s * r * lg - 10.0 * fint * r * lg;
            tr.tau_mod[i] = tr.tau[i] + r * r / (2.0 * s) - s * r * lg;
        } else {
            tr.I_mod[i] = tr.I[i] + 4.0 * std::pow(s, -0.5) * std::pow(r, 1.5) - s * r - 10.0 * r * fint;
            tr.tau_mod[i] = tr.tau[i] - 9.0 * pow_int(s, cfg.n) * r -
                            std::pow(r, 1.5) * std::pow(s, cfg.n - 2.5);
        }
    }
    return tr;
}

double derivative_identity_residual(const TwoSheetConfig& cfg, double s,
                                    const numerics::DiffSpec& spec) {
    require_single_neck(cfg);
    require_range(cfg, s);
    if (!cfg.nodes.empty() && (s <= cfg.nodes.front().rho || s >= cfg.nodes.back().rho))
        throw std::domain_error("derivative_identity_residual: s at the grid boundary");
    numerics::DiffSpec d = spec;
    d.base_step = spec.base_step * s;
    const double dI = numerics::derivative([&](double x) { return I_of_s(cfg, x); }, s, d).value;
    const double t = ts::t_of_rho(cfg, s);
    const double phi = ts::phi_at(cfg, t);
    const double w = ts::w_at(cfg, t);
    const int n = cfg.n;
    // div_Sigma of the ambient radial field is (n - phi^2)/rho in flat space
    const double correction =
        std::pow(t / s, n - 1.0) * w * ((n - phi * phi) / (s * phi) + (1.0 - n) * phi / s);
    const double rhs = tau_of_s(cfg, s) / std::pow(s, n - 1.0) + correction;
    return std::abs(dI - rhs);
}

double area_identity_residual(const TwoSheetConfig& cfg, double R, double s,
                              const numerics::DiffSpec& spec) {
    require_single_neck(cfg);
    require_range(cfg, R);
    require_range(cfg, s);
    if (!(R < s)) throw std::domain_error("area_identity_residual: needs R < s");
    const int n = cfg.n;
    const double omega = cat::sphere_area(n - 1);
    const double tR = ts::t_of_rho(cfg, R);
    const double boundary = (R / n) * omega * std::pow(tR, n - 1.0) * ts::phi_at(cfg, tR);
    // One-sheet annulus area; a fixed-panel rule keeps the value smooth in s
    // so it can be finite-differenced.
    auto annulus = [&](double s_out) {
        const double t_out = ts::t_of_rho(cfg, s_out);
        return omega * numerics::fixed_quad(
                           [&](double t) { return std::pow(t, n - 1.0) * ts::metric_at(cfg, t); },
                           tR, t_out, 96);
    };
    auto G = [&](double x) { return (annulus(x) + boundary) / pow_int(x, n); };
    numerics::DiffSpec d = spec;
    d.base_step = spec.base_step * s;
    const double lhs = numerics::derivative(G, s, d).value;
    const double t = ts::t_of_rho(cfg, s);
    const double phi = ts::phi_at(cfg, t);
    const double rhs = omega * std::pow(t, n - 1.0) * (1.0 / phi - phi) / pow_int(s, n);
    return std::abs(lhs - rhs);
}

FIntegralResult f_integral_bound(const TwoSheetConfig& cfg, double R, double s_end, double epsilon,
                                 std::optional<std::pair<double, double>> exclude) {
    require_single_neck(cfg);
    require_range(cfg, R);
    require_range(cfg, s_end);
    if (!(R < s_end)) throw std::domain_error("f_integral_bound: needs R < s_end");
    FIntegralResult res;
    res.value = f_integral(cfg, R, s_end, exclude);
    res.epsilon_used = epsilon;
    res.in_regime = (cfg.kind == TwoSheetConfig::Kind::parallel_planes) || (R >= 10.0 * cfg.r);
    res.within = res.value < epsilon;
    return res;
}

DecreaseReport modified_decrease_report(const TwoSheetConfig& cfg, std::span<const double> s_grid) {
    require_single_neck(cfg);
    if (s_grid.size() < 2)
        throw std::invalid_argument("modified_decrease_report: need at least two grid points");
    const MonotoneTrace tr = trace(cfg, s_grid);
    DecreaseReport rep;
    rep.n = cfg.n;
    rep.r = cfg.r;
    const std::size_t m = tr.s.size();
    rep.interior_points = static_cast<int>(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (tr.I_mod[i + 1] <= tr.I_mod[i] + 1e-14) ++rep.I_mod_decreasing;
        if (tr.tau_mod[i + 1] <= tr.tau_mod[i] + 1e-14) ++rep.tau_mod_decreasing;
    }
    const double r = cfg.r;
    rep.I_bound_ok = true;
    rep.tau_bound_ok = true;
    double sup_w = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double s = tr.s[i];
        const double t = ts::t_of_rho(cfg, s);
        sup_w = std::max(sup_w, ts::w_at(cfg, t));
        if (cfg.n == 2) {
            if (!(tr.I[i] < 4.0 * r * std::log(s / r))) rep.I_bound_ok = false;
            if (!(tr.tau[i] < 3.0 * r - r * r / (2.0 * s) + s * r * std::log(s / r)))
                rep.tau_bound_ok = false;
        } else {
            if (!(tr.I[i] < 3.0 * r)) rep.I_bound_ok = false;
            if (!(tr.tau[i] < 3.0 * std::pow(r, cfg.n - 1.0) + 9.0 * pow_int(s, cfg.n) * r +
                              std::pow(r, 1.5) * std::pow(s, cfg.n - 2.5)))
                rep.tau_bound_ok = false;
        }
    }
    rep.sup_w = sup_w;
    const double s_max = tr.s.back();
    rep.sup_w_bound = (cfg.n == 2) ? 7.5 * r * std::log(s_max / r) : 4.5 * r;
    rep.sup_w_theorem = (cfg.n == 2) ? 8.0 * r * std::abs(std::log(r)) : 5.0 * r;
    rep.sup_w_ok = sup_w < rep.sup_w_bound && sup_w < rep.sup_w_theorem;
    return rep;
}

double f_integral_two_neck(const TwoSheetConfig& cfg, double R, double s_end) {
    if (cfg.kind != TwoSheetConfig::Kind::double_neck)
        throw fixture_error("f_integral_two_neck: needs the double-neck fixture");
    if (!(R < s_end)) throw std::domain_error("f_integral_two_neck: needs R < s_end");
    // Around the primary neck the fixture is the exact catenoid; beyond the
    // glue annulus both sheets are parallel planes, so F vanishes there.
    TwoSheetConfig primary;
    primary.kind = TwoSheetConfig::Kind::catenoid;
    primary.n = cfg.n;
    primary.r = cfg.r;
    const double inner_hi = std::min(s_end, 0.5 * cfg.b);
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-10;
    if (!(inner_hi > R)) return 0.0;
    return numerics::integrate([&](double x) { return F_of_s(primary, x); }, R, inner_hi, spec).value;
}

double tau_second_center(const TwoSheetConfig& cfg, double s) {
    if (cfg.kind != TwoSheetConfig::Kind::double_neck)
        throw fixture_error("tau_second_center: needs the double-neck fixture");
    if (!(s <= 0.25 * cfg.b)) throw std::domain_error("tau_second_center: s > b/4");
    return std::pow(cfg.r2, cfg.n - 1.0) * cat::two_sheet_flux(cfg.n, cfg.r2, s);
}

double tau_primary(const TwoSheetConfig& cfg, double s) {
    if (cfg.kind != TwoSheetConfig::Kind::double_neck)
        throw fixture_error("tau_primary: needs the double-neck fixture");
    if (!(s <= 0.5 * cfg.b)) throw std::domain_error("tau_primary: s > b/2");
    return std::pow(cfg.r, cfg.n - 1.0) * cat::two_sheet_flux(cfg.n, cfg.r, s);
}

}  // namespace catlab::monotone

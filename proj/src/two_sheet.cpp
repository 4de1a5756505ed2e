#include "catlab/two_sheet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "catlab/catenoid.hpp"
#include "catlab/errors.hpp"

namespace catlab::two_sheet {

namespace {

namespace cat = catlab::catenoid;

void require_axisymmetric(const TwoSheetConfig& cfg) {
    if (cfg.kind == TwoSheetConfig::Kind::double_neck)
        throw fixture_error("operation needs a single-neck axisymmetric fixture");
}

double ipow(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

}  // namespace

TwoSheetConfig make_catenoid_config(int n, double r, double rho_min, double rho_max, int points) {
    cat::require_dimension(n);
    if (r <= 0.0) throw std::domain_error("make_catenoid_config: r <= 0");
    if (rho_min < 2.0 * r) throw std::domain_error("make_catenoid_config: rho_min < 2r");
    if (!(rho_max > rho_min) || points < 2)
        throw std::invalid_argument("make_catenoid_config: bad grid");
    TwoSheetConfig cfg;
    cfg.kind = TwoSheetConfig::Kind::catenoid;
    cfg.n = n;
    cfg.r = r;
    const double ratio = std::pow(rho_max / rho_min, 1.0 / (points - 1));
    cfg.nodes.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double rho = (i + 1 == points) ? rho_max : rho_min * std::pow(ratio, i);
        TwoSheetConfig::Node node;
        node.rho = rho;
        node.t = r * cat::slice_radius(n, rho / r);
        node.w = r * cat::sheet_separation(n, node.t / r);
        if (!(node.w > 0.0)) throw geometry_error("make_catenoid_config: non-positive separation");
        cfg.nodes[static_cast<std::size_t>(i)] = node;
    }
    return cfg;
}

TwoSheetConfig make_plane_config(int n, double w0, double rho_min, double rho_max, int points) {
    cat::require_dimension(n);
    if (!(w0 > 0.0)) throw std::domain_error("make_plane_config: sheets must be disjoint (w0 > 0)");
    if (!(rho_min > 0.0) || !(rho_max > rho_min) || points < 2)
        throw std::invalid_argument("make_plane_config: bad grid");
    TwoSheetConfig cfg;
    cfg.kind = TwoSheetConfig::Kind::parallel_planes;
    cfg.n = n;
    cfg.w0 = w0;
    const double ratio = std::pow(rho_max / rho_min, 1.0 / (points - 1));
    cfg.nodes.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double rho = (i + 1 == points) ? rho_max : rho_min * std::pow(ratio, i);
        cfg.nodes[static_cast<std::size_t>(i)] = {rho, rho, w0};
    }
    return cfg;
}

TwoSheetConfig make_double_neck_config(int n, double r, double r2, double b) {
    cat::require_dimension(n);
    if (n < 3) throw fixture_error("double-neck fixture needs bounded sheets (n >= 3)");
    if (!(r > 0.0) || !(r2 > 0.0) || r2 > r)
        throw std::domain_error("make_double_neck_config: requires 0 < r2 <= r");
    if (!(b > 16.0 * r)) throw std::domain_error("make_double_neck_config: centers too close");
    TwoSheetConfig cfg;
    cfg.kind = TwoSheetConfig::Kind::double_neck;
    cfg.n = n;
    cfg.r = r;
    cfg.r2 = r2;
    cfg.b = b;
    return cfg;
}

double rho_at(const TwoSheetConfig& cfg, double t) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return t;
    const double that = t / cfg.r;
    return cfg.r * std::hypot(that, cat::height(cfg.n, 1.0, that));
}

double t_of_rho(const TwoSheetConfig& cfg, double rho) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return rho;
    return cfg.r * cat::slice_radius(cfg.n, rho / cfg.r);
}

double w_at(const TwoSheetConfig& cfg, double t) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return cfg.w0;
    return cfg.r * cat::sheet_separation(cfg.n, t / cfg.r);
}

double dw_dt_at(const TwoSheetConfig& cfg, double t) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return 0.0;
    return cat::sheet_separation_slope(cfg.n, t / cfg.r);
}

double metric_at(const TwoSheetConfig& cfg, double t) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return 1.0;
    const double hp = cat::height_slope(cfg.n, cfg.r, t);
    return std::sqrt(1.0 + hp * hp);
}

double phi_at(const TwoSheetConfig& cfg, double t) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return 1.0;
    const double that = t / cfg.r;
    const double h = cat::height(cfg.n, 1.0, that);
    const double hp = cat::height_slope(cfg.n, 1.0, that);
    const double rho = std::hypot(that, h);
    return (that + h * hp) / (rho * std::sqrt(1.0 + hp * hp));
}

double a_norm_at(const TwoSheetConfig& cfg, double t) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return 0.0;
    return cat::second_fundamental_norm(cfg.n, cfg.r, t);
}

double grad_a_norm_at(const TwoSheetConfig& cfg, double t) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return 0.0;
    // |grad A|^2 = (n-1)(n+2) kappa_p,l^2 with kappa_p,l = -n kappa_p / (t P)
    // (Codazzi makes grad A fully symmetric; all components reduce to kappa_p,l).
    const int n = cfg.n;
    const double kappa_p = ipow(cfg.r, n - 1) / ipow(t, n);
    const double P = metric_at(cfg, t);
    const double kpl = n * kappa_p / (t * P);
    return std::sqrt((n - 1.0) * (n + 2.0)) * kpl;
}

double grad_w_at(const TwoSheetConfig& cfg, double t) {
    return std::abs(dw_dt_at(cfg, t)) / metric_at(cfg, t);
}

namespace {

// d/dt of dw/dt by Richardson differencing of the closed-form slope.
double d2w_dt2_at(const TwoSheetConfig& cfg, double t, const numerics::DiffSpec& spec) {
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return 0.0;
    numerics::DiffSpec local = spec;
    local.base_step = std::max(spec.base_step * t, 1e-6 * t);
    return numerics::derivative([&](double x) { return dw_dt_at(cfg, x); }, t, local).value;
}

}  // namespace

double hessian_w_norm_at(const TwoSheetConfig& cfg, double t, const numerics::DiffSpec& spec) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return 0.0;
    const double P = metric_at(cfg, t);
    const double P2 = P * P;
    const int n = cfg.n;
    const double hp = cat::height_slope(cfg.n, cfg.r, t);
    // h'' = -(n-1) (t/r)^{2n-3} h'^3 / r for the profile of radius r
    const double hpp = -(n - 1.0) * std::pow(t / cfg.r, 2.0 * n - 3.0) * hp * hp * hp / cfg.r;
    const double wp = dw_dt_at(cfg, t);
    const double wpp = d2w_dt2_at(cfg, t, spec);
    const double w_ll = wpp / P2 - wp * hp * hpp / (P2 * P2);
    const double w_rot = wp / (t * P2);  // (t_l / t) w_l with t_l = 1/P
    return std::sqrt(w_ll * w_ll + (n - 1.0) * w_rot * w_rot);
}

double laplacian_w_at(const TwoSheetConfig& cfg, double t, const numerics::DiffSpec& spec) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::parallel_planes) return 0.0;
    // Delta f = (1/sqrt(g)) (sqrt(g) f')' along the radial coordinate:
    //   w''/P^2 - w' h' h''/P^4 + (n-1) w'/(t P^2).
    const double P2 = std::pow(metric_at(cfg, t), 2);
    const int n = cfg.n;
    const double hp = cat::height_slope(cfg.n, cfg.r, t);
    const double hpp = -(n - 1.0) * std::pow(t / cfg.r, 2.0 * n - 3.0) * hp * hp * hp / cfg.r;
    const double wp = dw_dt_at(cfg, t);
    const double wpp = d2w_dt2_at(cfg, t, spec);
    return wpp / P2 - wp * hp * hpp / (P2 * P2) + (n - 1.0) * wp / (t * P2);
}

GraphResidualReport minimal_graph_residual(const TwoSheetConfig& cfg, const numerics::DiffSpec& spec,
                                           ExecPolicy policy) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::catenoid) {
        for (const auto& node : cfg.nodes)
            if (node.rho < 10.0 * cfg.r)
                throw std::domain_error("minimal_graph_residual: node with rho < 10r");
    }
    const double C = std::pow(10.0, cfg.n);
    GraphResidualReport rep;
    rep.rows.resize(cfg.nodes.size());
    std::vector<double> part0(cfg.nodes.size()), part1(cfg.nodes.size());
    double wmax = 0.0;
    for (const auto& node : cfg.nodes) wmax = std::max(wmax, node.w);
    rep.tolerance = 1e-6 * wmax;

    for_each_index(policy, static_cast<std::ptrdiff_t>(cfg.nodes.size()), [&](std::ptrdiff_t i) {
        const auto& node = cfg.nodes[static_cast<std::size_t>(i)];
        const double t = node.t;
        const double w = node.w;
        const double A = a_norm_at(cfg, t);
        const double gw = grad_w_at(cfg, t);
        const double hw = hessian_w_norm_at(cfg, t, spec);
        const double gA = grad_a_norm_at(cfg, t);
        const double lhs = laplacian_w_at(cfg, t, spec) + A * A * w;
        // split the allowance into its C-free and C-scaled brackets
        const double t0 = 8.0 * A * gw * gw + A * A * A * w * w + hw * A * w;
        const double t1 = (w + gw + gw * gw * gw) * w + gw * gw * hw + gw * gw * gw * gA * w +
                          A * w * w * (1.0 + gw) + hw * w * w + gA * gw * w * w * (A + w) +
                          gw * w * w * (1.0 + A * gw + gA * w + A * A * w);
        ResidualRow row;
        row.rho = node.rho;
        row.w = w;
        row.lhs = lhs;
        row.rhs = t0 + C * t1;
        row.residual = lhs - row.rhs;
        rep.rows[static_cast<std::size_t>(i)] = row;
        part0[static_cast<std::size_t>(i)] = t0;
        part1[static_cast<std::size_t>(i)] = t1;
    });

    rep.all_nonpositive = true;
    double c_min = 0.0;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& row = rep.rows[i];
        if (row.residual > rep.tolerance) rep.all_nonpositive = false;
        if (part1[i] > 0.0) c_min = std::max(c_min, (row.lhs - part0[i]) / part1[i]);
    }
    rep.c_min = std::max(0.0, c_min);
    return rep;
}

bool laplace_inequality_check(const TwoSheetConfig& cfg, const numerics::DiffSpec& spec,
                              ExecPolicy policy) {
    require_axisymmetric(cfg);
    if (cfg.kind == TwoSheetConfig::Kind::catenoid) {
        for (const auto& node : cfg.nodes)
            if (node.rho < 10.0 * cfg.r)
                throw std::domain_error("laplace_inequality_check: node with rho < 10r");
    }
    std::vector<char> ok(cfg.nodes.size(), 1);
    for_each_index(policy, static_cast<std::ptrdiff_t>(cfg.nodes.size()), [&](std::ptrdiff_t i) {
        const auto& node = cfg.nodes[static_cast<std::size_t>(i)];
        const double lap = laplacian_w_at(cfg, node.t, spec);
        const double bound = node.w + 0.125 * node.w * node.w * node.w / std::pow(node.rho, 4);
        ok[static_cast<std::size_t>(i)] = lap <= bound + 1e-12 * (1.0 + std::abs(bound));
    });
    return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

SphereFoliation::SphereFoliation(int n_, double r0_, double depth_, int levels_, double u_amp_)
    : n(n_), r0(r0_), depth(depth_), levels(levels_), u_amp(u_amp_) {
    cat::require_dimension(n);
    if (!(r0 > 0.0) || !(depth > 0.0)) throw std::domain_error("SphereFoliation: bad r0/depth");
    if (levels < 5)
        throw fixture_error("SphereFoliation: need at least 5 s-levels for differencing");
}

namespace {

struct LeafFields {
    // closed forms along the ray with direction cosine c = <theta, e>
    int n;
    double r0, alpha, c;
    double rho(double s) const { return r0 + s; }
    double H(double s) const { return n / rho(s); }
    double A2(double s) const { return n / (rho(s) * rho(s)); }
    double gradu2(double s) const { return alpha * alpha * (1.0 - c * c) / (rho(s) * rho(s)); }
    double div_gradu(double s) const { return -n * alpha * c / (rho(s) * rho(s)) - n / rho(s); }
    double hess2(double s) const { return n * alpha * alpha * c * c / std::pow(rho(s), 4); }
};

}  // namespace

EvolutionResiduals evolution_identity_residuals(const SphereFoliation& fol,
                                                const numerics::DiffSpec& spec) {
    EvolutionResiduals out;
    const double ds = fol.depth / (fol.levels - 1);
    numerics::DiffSpec d = spec;
    d.base_step = std::min(spec.base_step, 0.45 * ds);
    const double cosines[] = {std::cos(0.4), std::cos(1.1), std::cos(2.0)};
    for (double c : cosines) {
        LeafFields lf{fol.n, fol.r0, fol.u_amp, c};
        for (int level = 2; level + 2 < fol.levels; ++level) {
            const double s = level * ds;
            const double rho = lf.rho(s);
            auto fd = [&](auto&& fn) {
                return numerics::derivative([&](double x) { return fn(x); }, s, d).value;
            };
            out.mean_curvature = std::max(
                out.mean_curvature, std::abs(fd([&](double x) { return lf.H(x); }) + lf.A2(s)));
            out.second_fundamental =
                std::max(out.second_fundamental,
                         std::abs(fd([&](double x) { return lf.A2(x); }) + 2.0 * fol.n / std::pow(rho, 3)));
            out.gradient_norm = std::max(
                out.gradient_norm,
                std::abs(fd([&](double x) { return lf.gradu2(x) + 1.0; }) + 2.0 * lf.gradu2(s) / rho));
            // tilde grad u = (alpha/rho) e - (alpha c / rho + 1) theta; its radial
            // derivative must equal -A(grad u) = -(alpha/rho^2)(e - c theta).
            const double de = fd([&](double x) { return fol.u_amp / lf.rho(x); });
            const double dtheta = fd([&](double x) { return -(fol.u_amp * c / lf.rho(x) + 1.0); });
            const double target_e = -fol.u_amp / (rho * rho);
            const double target_theta = fol.u_amp * c / (rho * rho);
            out.radial_gradient = std::max(
                out.radial_gradient, std::max(std::abs(de - target_e), std::abs(dtheta - target_theta)));
            out.div_gradient =
                std::max(out.div_gradient,
                         std::abs(fd([&](double x) { return lf.div_gradu(x); }) -
                                  (lf.A2(s) + 2.0 * fol.n * fol.u_amp * c / std::pow(rho, 3))));
            out.hessian_norm = std::max(
                out.hessian_norm,
                std::abs(fd([&](double x) { return lf.hess2(x); }) +
                         4.0 * fol.n * fol.u_amp * fol.u_amp * c * c / std::pow(rho, 5)));
        }
        // Spatial identity div A(grad u) = <hess u, A>: FD divergence of the
        // Cartesian field alpha (e - <x^,e> x^)/|x|^2 in (n+1)-space.
        {
            const int dim = fol.n + 1;
            const double s = 0.5 * fol.depth;
            const double rho = lf.rho(s);
            std::vector<double> x(static_cast<std::size_t>(dim), 0.0);
            x[0] = rho * c;
            x[1] = rho * std::sqrt(1.0 - c * c);
            auto field = [&](const std::vector<double>& p, int comp) {
                double norm = 0.0;
                for (double v : p) norm += v * v;
                norm = std::sqrt(norm);
                const double ce = p[0] / norm;
                const double e_comp = (comp == 0) ? 1.0 : 0.0;
                return fol.u_amp * (e_comp - ce * p[static_cast<std::size_t>(comp)] / norm) /
                       (norm * norm);
            };
            double div = 0.0;
            const double h = d.base_step;
            for (int k = 0; k < dim; ++k) {
                std::vector<double> xp = x, xm = x;
                xp[static_cast<std::size_t>(k)] += h;
                xm[static_cast<std::size_t>(k)] -= h;
                std::vector<double> xp2 = x, xm2 = x;
                xp2[static_cast<std::size_t>(k)] += 0.5 * h;
                xm2[static_cast<std::size_t>(k)] -= 0.5 * h;
                const double d1 = (field(xp, k) - field(xm, k)) / (2.0 * h);
                const double d2 = (field(xp2, k) - field(xm2, k)) / h;
                div += (4.0 * d2 - d1) / 3.0;
            }
            const double target = -fol.n * fol.u_amp * c / std::pow(rho, 3);
            out.div_shape_gradient = std::max(out.div_shape_gradient, std::abs(div - target));
        }
    }
    out.max_residual = std::max({out.mean_curvature, out.second_fundamental, out.gradient_norm,
                                 out.radial_gradient, out.div_shape_gradient, out.div_gradient,
                                 out.hessian_norm});
    return out;
}

bool curvature_propagation_check(const SphereFoliation& fol) {
    const double a_base = std::sqrt(static_cast<double>(fol.n)) / fol.r0;
    if (a_base * fol.depth > 0.1)
        throw regime_error("curvature_propagation_check: |A| * depth too large for the foliation regime");
    const double gu_base = fol.u_amp / fol.r0;  // worst-case |grad u| on the base leaf
    const double ds = fol.depth / (fol.levels - 1);
    for (int level = 0; level < fol.levels; ++level) {
        const double s = level * ds;
        const double a_leaf = std::sqrt(static_cast<double>(fol.n)) / (fol.r0 + s);
        if (a_leaf > 2.0 * a_base + 2.0 * s) return false;
        const double gu_leaf = gu_base * fol.r0 / (fol.r0 + s);
        if (gu_leaf > 2.0 * gu_base) return false;
    }
    return true;
}

}  // namespace catlab::two_sheet

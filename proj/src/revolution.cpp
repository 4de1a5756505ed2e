#include "catlab/revolution.hpp"

#include <cmath>
#include <stdexcept>

#include "catlab/catenoid.hpp"
#include "catlab/errors.hpp"
#include "catlab/numerics.hpp"

namespace catlab::revolution {

namespace {

double ipow(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

}  // namespace

RevolutionSurface::RevolutionSurface(int n_, double a_) : n(n_), a(a_) {
    catenoid::require_dimension(n);
    if (a < 1.0) throw std::domain_error("RevolutionSurface: requires a >= 1");
}

void RevolutionSurface::require_interior(double t) const {
    if (!(std::abs(t) < a)) throw std::domain_error("RevolutionSurface: |t| >= a");
}

double RevolutionSurface::rho(double t) const {
    require_interior(t);
    return std::sqrt(1.0 - ipow(t / a, 2 * n));
}

double RevolutionSurface::rho_p(double t) const {
    require_interior(t);
    return -n * ipow(t, 2 * n - 1) / (ipow(a, 2 * n) * rho(t));
}

double RevolutionSurface::rho_pp(double t) const {
    require_interior(t);
    const double r = rho(t);
    const double rp = rho_p(t);
    const double a2n = ipow(a, 2 * n);
    return -n * (2 * n - 1) * ipow(t, 2 * n - 2) / (a2n * r) + n * ipow(t, 2 * n - 1) * rp / (a2n * r * r);
}

double leaf_area(int n, double a, double t) {
    RevolutionSurface surf(n, a);
    surf.require_interior(t);
    const double q = ipow(std::abs(t) / a, 2 * n);
    return catenoid::sphere_area(n) * std::exp(0.5 * n * std::log1p(-q));
}

LeafDeficit leaf_area_deficit(int n, double a, double t) {
    RevolutionSurface surf(n, a);
    surf.require_interior(t);
    const double omega = catenoid::sphere_area(n);
    const double q = ipow(std::abs(t) / a, 2 * n);
    LeafDeficit d;
    d.deficit = -omega * std::expm1(0.5 * n * std::log1p(-q));
    d.bound = 0.5 * n * omega * q;
    d.displayed_gap = leaf_area(n, a, t) - omega * (1.0 - q);
    if (d.deficit > d.bound * (1.0 + 1e-12))
        throw accuracy_error("leaf_area_deficit: deficit exceeded its q^{2n} bound", d.deficit);
    return d;
}

double meridian_distance(int n, double a, double t) {
    RevolutionSurface surf(n, a);
    surf.require_interior(t);
    const double T = std::abs(t);
    if (T == 0.0) return 0.0;
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-12;
    auto f = [&](double tau) {
        const double rp = surf.rho_p(tau);
        return std::sqrt(1.0 + rp * rp);
    };
    return numerics::integrate(f, 0.0, T, spec).value;
}

PrincipalCurvatures principal_curvatures(int n, double a, double t) {
    RevolutionSurface surf(n, a);
    surf.require_interior(t);
    const double rp = surf.rho_p(t);
    const double rpp = surf.rho_pp(t);
    const double g = 1.0 + rp * rp;
    PrincipalCurvatures k;
    k.meridian = -rpp / (g * std::sqrt(g));
    k.sphere = 1.0 / (surf.rho(t) * std::sqrt(g));
    return k;
}

double ricci_min_eigenvalue(int n, double a, double t) {
    const PrincipalCurvatures k = principal_curvatures(n, a, t);
    const double H = k.meridian + n * k.sphere;
    const double eig_meridian = k.meridian * (H - k.meridian);
    const double eig_sphere = k.sphere * (H - k.sphere);
    return std::min(eig_meridian, eig_sphere);
}

int leaf_mean_curvature_sign(int n, double a, double t) {
    RevolutionSurface surf(n, a);
    surf.require_interior(t);
    // <H_vec, nu_+> = -d/d(ell) log rho^n = -n rho' / (rho sqrt(1 + rho'^2));
    // rho' vanishes exactly at t = 0 and nowhere else on the grid scales used
    const double rp = surf.rho_p(t);
    const double v = -n * rp / (surf.rho(t) * std::sqrt(1.0 + rp * rp));
    if (v == 0.0) return 0;
    return v > 0.0 ? 1 : -1;
}

double equator_degeneracy(int n, double a) {
    RevolutionSurface surf(n, a);
    // Leaf shape operator at t = 0 has entries rho'/(rho sqrt(1+rho'^2));
    // Ric(nu, nu) along the meridian is kappa_mer * n * kappa_sph.
    const double rp = surf.rho_p(0.0);
    const double leaf_kappa = rp / (surf.rho(0.0) * std::sqrt(1.0 + rp * rp));
    const PrincipalCurvatures k = principal_curvatures(n, a, 0.0);
    return n * leaf_kappa * leaf_kappa + k.meridian * n * k.sphere;
}

std::vector<FamilyRow> family_table(int n, double a, int points, double t_frac, ExecPolicy policy) {
    RevolutionSurface surf(n, a);
    if (points < 2) throw std::invalid_argument("family_table: points < 2");
    if (!(t_frac > 0.0 && t_frac < 1.0)) throw std::invalid_argument("family_table: t_frac not in (0,1)");
    std::vector<FamilyRow> rows(static_cast<std::size_t>(points));
    const double t0 = -t_frac * a;
    const double dt = 2.0 * t_frac * a / (points - 1);
    for_each_index(policy, points, [&](std::ptrdiff_t i) {
        const double t = t0 + dt * static_cast<double>(i);
        FamilyRow row;
        row.t = t;
        row.rho = surf.rho(t);
        row.area = leaf_area(n, a, t);
        const PrincipalCurvatures k = principal_curvatures(n, a, t);
        row.kappa_mer = k.meridian;
        row.kappa_sph = k.sphere;
        row.ric_min = ricci_min_eigenvalue(n, a, t);
        row.dist = meridian_distance(n, a, t);
        rows[static_cast<std::size_t>(i)] = row;
    });
    return rows;
}

}  // namespace catlab::revolution

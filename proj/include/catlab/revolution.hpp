#pragma once

#include <vector>

#include "catlab/parallel.hpp"

namespace catlab::revolution {

// The (n+1)-sphere of revolution in flat (n+2)-space with profile
//   rho(t) = (1 - t^{2n}/a^{2n})^{1/2},  t in (-a, a),
// whose level sets {x_{n+2} = t} are round n-spheres of radius rho(t).
struct RevolutionSurface {
    int n = 2;
    double a = 1.0;

    RevolutionSurface(int n_, double a_);

    double rho(double t) const;
    double rho_p(double t) const;
    double rho_pp(double t) const;

    void require_interior(double t) const;  // |t| < a
};

// Exact leaf area Omega_n rho(t)^n.
double leaf_area(int n, double a, double t);

// Deficit Omega_n - leaf_area(t); computed without cancellation, together
// with the bound (n/2) Omega_n (|t|/a)^{2n} it never exceeds.
struct LeafDeficit {
    double deficit = 0.0;
    double bound = 0.0;            // (n/2) Omega_n (|t|/a)^{2n}
    double displayed_gap = 0.0;    // leaf_area - Omega_n (1 - (t/a)^{2n}); < 0 for n >= 3
};
LeafDeficit leaf_area_deficit(int n, double a, double t);

// Intrinsic distance from the equator S_0 to the leaf S_t, realized along
// meridians: int_0^{|t|} sqrt(1 + rho'(tau)^2) dtau.
double meridian_distance(int n, double a, double t);

struct PrincipalCurvatures {
    double meridian = 0.0;  // -rho'' / (1 + rho'^2)^{3/2}
    double sphere = 0.0;    // 1 / (rho sqrt(1 + rho'^2)), multiplicity n
};
PrincipalCurvatures principal_curvatures(int n, double a, double t);

// Minimum Ricci eigenvalue via the Gauss equation (flat ambient):
// eigenvalues kappa_i (H - kappa_i) over the two curvature families.
double ricci_min_eigenvalue(int n, double a, double t);

// Sign of the mean curvature of S_t with respect to the unit normal pointing
// toward increasing t; 0 at the minimal equator, sign(t) otherwise.
int leaf_mean_curvature_sign(int n, double a, double t);

// |A_{S_0}|^2 + Ric(nu, nu) at the equator: the zeroth-order Jacobi
// coefficient on constants; identically zero for this family.
double equator_degeneracy(int n, double a);

struct FamilyRow {
    double t, rho, area, kappa_mer, kappa_sph, ric_min, dist;
};

// Uniform grid of 'points' samples over [-t_frac*a, t_frac*a].
std::vector<FamilyRow> family_table(int n, double a, int points, double t_frac = 0.99,
                                    ExecPolicy policy = ExecPolicy::parallel);

}  // namespace catlab::revolution

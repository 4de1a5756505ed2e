#pragma once

#include <vector>

#include "catlab/parallel.hpp"

namespace catlab::catenoid {

// Area of the unit m-sphere.
double sphere_area(int m);

void require_dimension(int n);  // 2 <= n <= 6, else std::domain_error

// Profile of the catenoid of radius r in (n+1)-space:
//   height(t) = int_r^t ds / sqrt((s/r)^{2(n-1)} - 1),   t >= r.
double height(int n, double r, double t);

// d height / dt; closed form 1/sqrt((t/r)^{2(n-1)} - 1).
double height_slope(int n, double r, double t);

// sup_t height for the unit catenoid: int_1^inf ds/sqrt(s^{2(n-1)}-1).
// Diverges logarithmically for n = 2 (divergence_error).
double height_sup(int n);

// Norm of the second fundamental form at cylindrical radius t.
double second_fundamental_norm(int n, double r, double t);

struct BallSlice {
    int n;
    double r;  // neck radius
    double R;  // extrinsic ball radius
    double t;  // cylindrical radius solving t^2 + height(t)^2 = R^2
    double h;  // height(t)
};
BallSlice slice_for_ball_radius(int n, double r, double R);

// Area of both sheets of the catenoid inside the extrinsic ball of radius R.
double area_in_ball(int n, double r, double R);

// Area of the flat n-ball of radius t: (Omega_{n-1}/n) t^n.
double disk_area(int n, double t);

struct ExcessResult {
    double value = 0.0;       // limit of area_in_ball - 2 disk_area
    double window = 0.0;      // last change across a doubling of R
    double tail_bound = 0.0;  // rigorous bound on the remaining tail
    double R_final = 0.0;
    int doublings = 0;
};

// Excess constant of the unit catenoid, n in [3, 6]. Evaluated in a
// cancellation-free rearrangement of area_in_ball - 2 disk_area; R doubles
// until three consecutive windows and the tail bound drop below 1e-6.
// n = 2 raises divergence_error (the excess grows like 2 pi log R).
ExcessResult excess_constant(int n);

// n = 2 excess at finite R: 2 pi (h + t sqrt(t^2-1)) - 2 pi t^2, in a form
// stable for large t. Requires R >= 2.
double log_excess_n2(double R);

// Intersection of the normal line of the lower sheet at cylindrical radius t
// with the upper sheet (unit catenoid). Solved in eta = delta * slope, which
// stays well conditioned when delta = t_h - t underflows against t.
struct NormalLineHit {
    double t_h;    // cylindrical radius of the hit
    double eta;    // (t_h - t) * sqrt(t^{2(n-1)} - 1)
    double delta;  // t_h - t
};
NormalLineHit normal_line_hit(int n, double t);

// Normal-line separation w between the sheets of the unit catenoid, and its
// t-derivative obtained by implicit differentiation of the hit equation
// (organized so the leading terms cancel analytically, not in floating point).
double sheet_separation(int n, double t);
double sheet_separation_slope(int n, double t);

// Cylindrical radius of the slice of the unit catenoid at extrinsic radius s.
double slice_radius(int n, double s);

// Averaged normal derivative of w over the sphere-of-radius-s cross section,
// normalized by r^{n-1}; tends to 2 as s/r -> infinity. Requires s >= 2r.
double two_sheet_flux(int n, double r, double s);

struct ProfileSample {
    double t = 0.0;
    double h = 0.0;
    double a_norm = 0.0;    // |A|
    double area_cum = 0.0;  // both sheets, out to cylindrical radius t
};

struct CatenoidProfile {
    int n = 2;
    double r = 1.0;
    double t_max = 0.0;
    std::vector<ProfileSample> samples;

    // Geometric grid in t (default ratio 1.05) from the neck out to t_max.
    static CatenoidProfile sample(int n, double r, double t_max, double ratio = 1.05,
                                  ExecPolicy policy = ExecPolicy::parallel);
};

}  // namespace catlab::catenoid

#include "catlab/catenoid.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "catlab/errors.hpp"
#include "catlab/numerics.hpp"

namespace catlab::catenoid {

namespace {

using numerics::IntegralResult;
using numerics::QuadratureSpec;

constexpr double kPi = 3.14159265358979323846;

QuadratureSpec profile_spec() {
    QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-12;
    spec.max_depth = 52;
    return spec;
}

// t^p - 1 without cancellation near t = 1.
double pow_m1(double t, double p) {
    if (t < 1.5) return std::expm1(p * std::log1p(t - 1.0));
    return std::pow(t, p) - 1.0;
}

// 1 - t^{-p} without cancellation for large exponents.
double one_m_pow(double t, double p) { return -std::expm1(-p * std::log(t)); }

double hp1(int n, double t) { return 1.0 / std::sqrt(pow_m1(t, 2.0 * (n - 1))); }

double slope_of(int n, double t) { return std::sqrt(pow_m1(t, 2.0 * (n - 1))); }

// Profile integrand 1/sqrt(s^{2(n-1)}-1) after the neck substitution s = 1+u^2,
// including the 2u Jacobian; smooth down to u = 0 where it tends to
// sqrt(2/(n-1)).
double profile_neck_sub(int n, double u) {
    if (u < 1e-14) return std::sqrt(2.0 / (n - 1.0));
    return 2.0 * u / std::sqrt(std::expm1(2.0 * (n - 1) * std::log1p(u * u)));
}

// Same substitution for the one-sheet area integrand s^{2(n-1)}/sqrt(s^{2(n-1)}-1).
double area_neck_sub(int n, double u) {
    if (u < 1e-14) return std::sqrt(2.0 / (n - 1.0));
    const double s2 = std::exp(2.0 * (n - 1) * std::log1p(u * u));
    return 2.0 * u * s2 / std::sqrt(s2 - 1.0);
}

// Excess integrand s^{2(n-1)}/sqrt(s^{2(n-1)}-1) - s^{n-1} under the neck
// substitution; the subtracted term is bounded, so no cancellation near u = 0.
double excess_neck_sub(int n, double u) {
    if (u < 1e-14) return std::sqrt(2.0 / (n - 1.0));
    const double s2 = std::exp(2.0 * (n - 1) * std::log1p(u * u));
    const double snm1 = std::exp((n - 1) * std::log1p(u * u));
    return 2.0 * u * (s2 / std::sqrt(s2 - 1.0) - snm1);
}

// Excess integrand in the outer form, stable against overflow and cancellation.
double excess_integrand(int n, double s) {
    const double x = std::exp(-2.0 * (n - 1) * std::log(s));
    const double sq = std::sqrt(1.0 - x);
    return std::exp(-(n - 1.0) * std::log(s)) / (sq * (1.0 + sq));
}

double area_integrand(int n, double s) {
    const double p = std::pow(s, 2.0 * (n - 1));
    return p / std::sqrt(p - 1.0);
}

// Cumulative profile tail over [2, 2^m], extended lazily; the neck piece
// [1, 2] and the dyadic blocks are shared by every height evaluation.
struct ProfileCache {
    std::mutex mu;
    double neck = -1.0;
    std::vector<double> cum_pow2;  // cum_pow2[m] = int_2^{2^{m+1}}, m >= 0; cum_pow2[0] = 0
};
std::array<ProfileCache, 7> g_profile_cache;

double profile_block(int n, double a, double b) {
    return numerics::integrate([n](double s) { return 1.0 / std::sqrt(pow_m1(s, 2.0 * (n - 1))); },
                               a, b, profile_spec())
        .value;
}

// height of the unit catenoid at cylindrical radius t >= 1.
double h1(int n, double t) {
    if (t <= 1.0) return 0.0;
    if (t <= 2.0) {
        return numerics::integrate([n](double u) { return profile_neck_sub(n, u); }, 0.0,
                                   std::sqrt(t - 1.0), profile_spec())
            .value;
    }
    ProfileCache& cache = g_profile_cache[static_cast<std::size_t>(n)];
    const int m = std::max(0, static_cast<int>(std::floor(std::log2(t))) - 1);
    double neck, cum;
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        if (cache.neck < 0.0) {
            cache.neck = numerics::integrate([n](double u) { return profile_neck_sub(n, u); }, 0.0,
                                             1.0, profile_spec())
                             .value;
            cache.cum_pow2 = {0.0};
        }
        while (static_cast<int>(cache.cum_pow2.size()) <= m) {
            const double lo = std::ldexp(2.0, static_cast<int>(cache.cum_pow2.size()) - 1);
            cache.cum_pow2.push_back(cache.cum_pow2.back() + profile_block(n, lo, 2.0 * lo));
        }
        neck = cache.neck;
        cum = cache.cum_pow2[static_cast<std::size_t>(m)];
    }
    const double base = std::ldexp(2.0, m);  // 2^{m+1} <= t
    double rest = 0.0;
    if (t > base) rest = profile_block(n, base, t);
    return neck + cum + rest;
}

// Integral of the excess integrand over [lo, hi] within [1, inf).
double excess_integral(int n, double lo, double hi) {
    double v = 0.0;
    if (lo < 2.0) {
        const double ulo = std::sqrt(std::max(0.0, lo - 1.0));
        const double uhi = std::sqrt(std::min(hi, 2.0) - 1.0);
        v += numerics::integrate([n](double u) { return excess_neck_sub(n, u); }, ulo, uhi,
                                 profile_spec())
                 .value;
        lo = 2.0;
    }
    // dyadic pieces keep the adaptive rule honest across many decades
    double a = lo;
    while (a < hi) {
        const double b = std::min(hi, 2.0 * a);
        v += numerics::integrate([n](double s) { return excess_integrand(n, s); }, a, b,
                                 profile_spec())
                 .value;
        a = b;
    }
    return v;
}

// One-sheet area integral over [1, that] in standard units.
double area_integral_std(int n, double that) {
    if (that <= 1.0) return 0.0;
    double v = numerics::integrate([n](double u) { return area_neck_sub(n, u); }, 0.0,
                                   std::sqrt(std::min(that, 2.0) - 1.0), profile_spec())
                   .value;
    double a = 2.0;
    while (a < that) {
        const double b = std::min(that, 2.0 * a);
        v += numerics::integrate([n](double s) { return area_integrand(n, s); }, a, b,
                                 profile_spec())
                 .value;
        a = b;
    }
    return v;
}

double t_of_s_std(int n, double s) {
    if (s < 1.0) throw std::domain_error("slice: extrinsic radius below the neck");
    auto f = [n, s](double t) { return t * t + std::pow(h1(n, t), 2) - s * s; };
    double lo = 1.0;
    if (n >= 3 && s > 4.0) {
        // height is bounded by height_sup < 1.32, so t is within a sliver of s
        const double hmax = 1.3111;
        lo = std::sqrt(std::max(1.0, s * s - hmax * hmax * 1.0001));
    }
    if (f(lo) >= 0.0) return lo;
    return numerics::solve_scalar(f, lo, s, 1e-13 * std::max(1.0, s));
}

}  // namespace

double sphere_area(int m) {
    if (m < 0) throw std::domain_error("sphere_area: negative dimension");
    return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

void require_dimension(int n) {
    if (n < 2 || n > 6) throw std::domain_error("dimension n must satisfy 2 <= n <= 6");
}

double height(int n, double r, double t) {
    require_dimension(n);
    if (r <= 0.0) throw std::domain_error("height: r must be positive");
    if (t < r) throw std::domain_error("height: t < r");
    return r * h1(n, t / r);
}

double height_slope(int n, double r, double t) {
    require_dimension(n);
    if (t <= r) throw std::domain_error("height_slope: t <= r");
    return hp1(n, t / r);
}

double height_sup(int n) {
    require_dimension(n);
    QuadratureSpec spec = profile_spec();
    spec.singular_left = true;
    auto f = [n](double s) { return 1.0 / std::sqrt(pow_m1(s, 2.0 * (n - 1))); };
    // n = 2 diverges logarithmically; the tail blocks detect it.
    return numerics::integrate_improper(f, 1.0, spec).value;
}

double second_fundamental_norm(int n, double r, double t) {
    require_dimension(n);
    if (t < r) throw std::domain_error("second_fundamental_norm: t < r");
    // Principal curvatures of the profile graph: the parallel family has
    // kappa_p = r^{n-1}/t^n with multiplicity n-1 and the meridian kappa_m =
    // -(n-1) kappa_p, so |A| = sqrt(n(n-1)) kappa_p.
    const double kappa_p = std::pow(r, n - 1.0) / std::pow(t, static_cast<double>(n));
    return std::sqrt(static_cast<double>(n) * (n - 1.0)) * kappa_p;
}

BallSlice slice_for_ball_radius(int n, double r, double R) {
    require_dimension(n);
    if (R < r) throw std::domain_error("slice_for_ball_radius: R < r");
    const double t = r * t_of_s_std(n, R / r);
    return {n, r, R, t, r * h1(n, t / r)};
}

double area_in_ball(int n, double r, double R) {
    require_dimension(n);
    if (R < r) throw std::domain_error("area_in_ball: R < r");
    const double that = t_of_s_std(n, R / r);
    return 2.0 * sphere_area(n - 1) * std::pow(r, static_cast<double>(n)) *
           area_integral_std(n, that);
}

double disk_area(int n, double t) {
    require_dimension(n);
    if (t <= 0.0) throw std::domain_error("disk_area: t <= 0");
    return sphere_area(n - 1) / n * std::pow(t, static_cast<double>(n));
}

ExcessResult excess_constant(int n) {
    require_dimension(n);
    const double omega = sphere_area(n - 1);
    double R = 10.0;
    double t_prev = t_of_s_std(n, R);
    // E(R) = 2 Omega_{n-1} (int_1^t excess_integrand - 1/n); algebraically
    // equal to area_in_ball - 2 disk_area but free of the t^n cancellation.
    double integral = excess_integral(n, 1.0, t_prev);
    double value = 2.0 * omega * (integral - 1.0 / n);
    int consecutive = 0;
    ExcessResult res;
    for (int k = 1; k <= 64; ++k) {
        R *= 2.0;
        const double t = t_of_s_std(n, R);
        integral += excess_integral(n, t_prev, t);
        t_prev = t;
        const double next = 2.0 * omega * (integral - 1.0 / n);
        const double window = std::abs(next - value);
        value = next;
        // excess_integrand(s) <= s^{-(n-1)} for s >= 2, so the tail beyond t
        // is at most 2 Omega_{n-1} t^{-(n-2)}/(n-2) when n >= 3.
        const double tail =
            (n >= 3) ? 2.0 * omega * std::pow(t, -(n - 2.0)) / (n - 2.0)
                     : std::numeric_limits<double>::infinity();
        consecutive = (window < 1e-6) ? consecutive + 1 : 0;
        if (k >= 6 && consecutive == 0 && window > 0.1)
            throw divergence_error("excess_constant: excess keeps growing with R");
        if (consecutive >= 3 && tail < 1e-6) {
            res.value = value;
            res.window = window;
            res.tail_bound = tail;
            res.R_final = R;
            res.doublings = k;
            if (!(res.value > 0.0))
                throw accuracy_error("excess_constant: non-positive limit", res.value);
            return res;
        }
    }
    throw accuracy_error("excess_constant: no convergence within 64 doublings", value);
}

double log_excess_n2(double R) {
    if (R < 2.0) throw std::domain_error("log_excess_n2: R < 2");
    const double t = t_of_s_std(2, R);
    const double h = h1(2, t);
    // t sqrt(t^2-1) - t^2 = -1/(1 + sqrt(1 - t^{-2})), stable for large t
    const double val = 2.0 * kPi * (h - 1.0 / (1.0 + std::sqrt(1.0 - 1.0 / (t * t))));
    return val;
}

NormalLineHit normal_line_hit(int n, double t) {
    require_dimension(n);
    if (t <= 1.0) throw std::domain_error("normal_line_hit: t <= 1");
    const double sl = slope_of(n, t);
    const double H = h1(n, t);
    auto G = [&](double eta) { return eta - H - h1(n, t + eta / sl); };
    const double hi = 2.0 * H + 4.0;
    if (!(G(0.0) < 0.0) || !(G(hi) > 0.0))
        throw geometry_error("normal_line_hit: normal line failed to bracket the opposite sheet");
    const double eta = numerics::solve_scalar(G, 0.0, hi, 1e-14 * (1.0 + 2.0 * H));
    const double delta = eta / sl;
    return {t + delta, eta, delta};
}

double sheet_separation(int n, double t) {
    const NormalLineHit hit = normal_line_hit(n, t);
    return hit.eta / std::sqrt(one_m_pow(t, 2.0 * (n - 1)));
}

double sheet_separation_slope(int n, double t) {
    // w = (t_h - t) t^{n-1} with t_h implicit in
    //   F(t, t_h) = h(t_h) + h(t) - (t_h - t) slope(t) = 0.
    // Direct differentiation leaves two O(t^{n-2}) terms that cancel; the
    // cancellation is carried out symbolically here, leaving
    //   w' = [sl t^{n-1}(h'(t) + h'(t_h)) - (n-1) D t^{n-2}(1 + sl h'(t_h))]
    //        / (sl - h'(t_h)) / sl .
    const NormalLineHit hit = normal_line_hit(n, t);
    const double sl = slope_of(n, t);
    const double hpt = hp1(n, t);
    const double hpth = hp1(n, hit.t_h);
    const double a = sl * std::pow(t, n - 1.0) * (hpt + hpth);
    const double b = (n - 1.0) * hit.delta * std::pow(t, n - 2.0) * (1.0 + sl * hpth);
    return (a - b) / (sl - hpth) / sl;
}

double slice_radius(int n, double s) {
    require_dimension(n);
    return t_of_s_std(n, s);
}

double two_sheet_flux(int n, double r, double s) {
    require_dimension(n);
    if (r <= 0.0) throw std::domain_error("two_sheet_flux: r <= 0");
    if (s < 2.0 * r) throw std::domain_error("two_sheet_flux: requires s >= 2r");
    const double t = t_of_s_std(n, s / r);
    return slope_of(n, t) * sheet_separation_slope(n, t);
}

CatenoidProfile CatenoidProfile::sample(int n, double r, double t_max, double ratio,
                                        ExecPolicy policy) {
    require_dimension(n);
    if (r <= 0.0 || t_max < r) throw std::domain_error("CatenoidProfile: bad r or t_max");
    if (ratio <= 1.0) throw std::invalid_argument("CatenoidProfile: ratio must exceed 1");
    CatenoidProfile p;
    p.n = n;
    p.r = r;
    p.t_max = t_max;
    std::vector<double> ts;
    for (double t = r; t < t_max; t *= ratio) ts.push_back(t);
    ts.push_back(t_max);
    p.samples.resize(ts.size());
    const double omega = sphere_area(n - 1);
    for_each_index(policy, static_cast<std::ptrdiff_t>(ts.size()), [&](std::ptrdiff_t i) {
        const double t = ts[static_cast<std::size_t>(i)];
        ProfileSample s;
        s.t = t;
        s.h = r * h1(n, t / r);
        s.a_norm = second_fundamental_norm(n, r, t);
        s.area_cum =
            2.0 * omega * std::pow(r, static_cast<double>(n)) * area_integral_std(n, t / r);
        p.samples[static_cast<std::size_t>(i)] = s;
    });
    return p;
}

}  // namespace catlab::catenoid

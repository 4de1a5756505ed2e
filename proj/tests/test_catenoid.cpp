#include <cmath>
#include <vector>

#include <doctest.h>

#include "catlab/catenoid.hpp"
#include "catlab/errors.hpp"
#include "catlab/numerics.hpp"

using namespace catlab;
namespace cat = catlab::catenoid;

TEST_CASE("height: neck value, closed form, and domain") {
    CHECK(cat::height(2, 1.0, 1.0) == 0.0);
    CHECK(cat::height(2, 1.0, 2.0) ==
          doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-10));
    // n = 2 profile is r acosh(t/r)
    for (double t : {1.5, 3.0, 10.0, 250.0})
        CHECK(cat::height(2, 0.5, t) == doctest::Approx(0.5 * std::acosh(t / 0.5)).epsilon(1e-10));
    CHECK_THROWS_AS(cat::height(2, 1.0, 0.5), std::domain_error);
}

TEST_CASE("height: scaling law h_r(t) = r h_1(t/r)") {
    for (int n : {2, 4}) {
        for (double t_hat : {1.25, 2.0, 8.0}) {
            const double base = cat::height(n, 1.0, t_hat);
            for (double r : {0.5, 2.0, 10.0})
                CHECK(cat::height(n, r, r * t_hat) == doctest::Approx(r * base).epsilon(1e-10));
        }
    }
}

TEST_CASE("height bounds: log window for n = 2, uniform cap for n >= 3") {
    for (double t : {2.0, 10.0, 1e3, 1e6}) {
        const double h = cat::height(2, 1.0, t);
        CHECK(h > std::log(t));
        CHECK(h < std::log(2.0 * t));
    }
    for (int n : {3, 4, 5, 6})
        for (double t : {1.5, 4.0, 100.0, 1e5})
            CHECK(cat::height(n, 1.0, t) < 1.31103);
}

TEST_CASE("height_sup: n = 3 pins the lemniscate value, n = 2 diverges") {
    const double h3 = cat::height_sup(3);
    CHECK(std::abs(h3 - 1.31103) < 1e-4);
    CHECK(h3 == doctest::Approx(1.3110287771460599).epsilon(1e-9));
    // the profile itself reaches the sup in the far field
    CHECK(std::abs(cat::height(3, 1.0, 1e6) - 1.31103) < 1e-4);
    CHECK_THROWS_AS(cat::height_sup(2), divergence_error);
    double prev = 1e300;
    for (int n = 3; n <= 6; ++n) {
        const double h = cat::height_sup(n);
        CHECK(2.0 * h < 2.7);
        CHECK(h < prev);
        prev = h;
    }
}

TEST_CASE("second_fundamental_norm: neck saturation and decay") {
    CHECK(cat::second_fundamental_norm(2, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(cat::second_fundamental_norm(3, 2.0, 2.0) == doctest::Approx(std::sqrt(6.0) / 2.0));
    const double far = cat::second_fundamental_norm(2, 1.0, 100.0);
    CHECK(far < 1e-3);
    CHECK(100.0 * far < 0.1);
    // scaling |A_r(t)| = |A_1(t/r)| / r
    for (double lam : {0.5, 2.0, 10.0})
        CHECK(cat::second_fundamental_norm(2, lam, lam * 3.0) ==
              doctest::Approx(cat::second_fundamental_norm(2, 1.0, 3.0) / lam).epsilon(1e-12));
}

TEST_CASE("second_fundamental_norm: finite-difference curvature oracle") {
    // reconstruct both principal curvature families from height() samples only
    for (int n : {2, 3, 5}) {
        for (double t : {1.4, 2.5, 6.0}) {
            numerics::DiffSpec d{1e-3, 3};
            const double hp =
                numerics::derivative([&](double x) { return cat::height(n, 1.0, x); }, t, d).value;
            const double hpp =
                numerics::derivative([&](double x) { return cat::height_slope(n, 1.0, x); }, t, d)
                    .value;
            const double g = 1.0 + hp * hp;
            const double kappa_p = hp / (t * std::sqrt(g));
            const double kappa_m = hpp / (g * std::sqrt(g));
            const double a_fd = std::sqrt(kappa_m * kappa_m + (n - 1.0) * kappa_p * kappa_p);
            CHECK(cat::second_fundamental_norm(n, 1.0, t) == doctest::Approx(a_fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("disk_area: closed values") {
    constexpr double pi = 3.14159265358979323846;
    CHECK(cat::disk_area(2, 1.0) == doctest::Approx(pi));
    CHECK(cat::disk_area(2, 3.0) == doctest::Approx(9.0 * pi));
    CHECK(cat::disk_area(3, 2.0) == doctest::Approx(32.0 * pi / 3.0));
}

TEST_CASE("ball slice: monotonicity and consistency") {
    for (int n : {2, 4}) {
        double prev = 0.0;
        for (double t : {1.0, 1.5, 2.0, 4.0, 16.0, 100.0}) {
            const double rho2 = t * t + std::pow(cat::height(n, 1.0, t), 2);
            CHECK(rho2 > prev);
            prev = rho2;
        }
        const cat::BallSlice slice = cat::slice_for_ball_radius(n, 1.0, 7.0);
        CHECK(slice.t * slice.t + slice.h * slice.h == doctest::Approx(49.0).epsilon(1e-10));
    }
    const cat::BallSlice neck = cat::slice_for_ball_radius(2, 1.0, 1.0);
    CHECK(neck.t == doctest::Approx(1.0));
}

TEST_CASE("area_in_ball: closed form for n = 2 and positivity of the excess") {
    const double h2 = cat::height(2, 1.0, 2.0);
    const double R = std::sqrt(4.0 + h2 * h2);
    const double closed = 2.0 * 3.14159265358979323846 * (h2 + 2.0 * std::sqrt(3.0));
    CHECK(closed == doctest::Approx(30.040282878942936).epsilon(1e-12));
    CHECK(cat::area_in_ball(2, 1.0, R) == doctest::Approx(closed).epsilon(1e-8));

    CHECK(cat::area_in_ball(2, 1.0, 1.0) == 0.0);

    const cat::BallSlice s3 = cat::slice_for_ball_radius(3, 1.0, 10.0);
    CHECK(cat::area_in_ball(3, 1.0, 10.0) - 2.0 * cat::disk_area(3, s3.t) > 0.0);
}

TEST_CASE("area_in_ball: scaling covariance") {
    for (int n : {2, 5}) {
        const double base = cat::area_in_ball(n, 1.0, 6.0);
        for (double lam : {0.5, 2.0, 10.0})
            CHECK(cat::area_in_ball(n, lam, lam * 6.0) ==
                  doctest::Approx(std::pow(lam, n) * base).epsilon(1e-8));
    }
}

namespace {

// Independent oracle for the excess constant: invert with u = 1/s, remove the
// u = 1 inverse-square-root endpoint with u = 1 - v^2, then midpoint-rule the
// smooth integrand 2v (1-v^2)^{n-3} / (sqrt(D)(1+sqrt(D))),
// D = 1 - (1-v^2)^{2(n-1)}; add the closed -2 Omega_{n-1}/n boundary term.
double excess_oracle(int n, int points) {
    double acc = 0.0;
    const double h = 1.0 / points;
    for (int i = 0; i < points; ++i) {
        const double v = (i + 0.5) * h;
        const double D = -std::expm1(2.0 * (n - 1) * std::log1p(-v * v));
        const double sq = std::sqrt(D);
        acc += 2.0 * v * std::pow(1.0 - v * v, n - 3.0) / (sq * (1.0 + sq));
    }
    return 2.0 * cat::sphere_area(n - 1) * (acc * h - 1.0 / n);
}

}  // namespace

TEST_CASE("excess_constant: positive limits vs the inverted-variable oracle") {
    const double frozen[] = {0.0, 0.0, 0.0, 10.983249, 6.919491, 5.074038, 3.802500};
    for (int n = 3; n <= 6; ++n) {
        const cat::ExcessResult ex = cat::excess_constant(n);
        CHECK(ex.value > 1e-3);
        CHECK(ex.window < 1e-6);
        CHECK(ex.tail_bound < 1e-6);
        CHECK(ex.value == doctest::Approx(excess_oracle(n, 2'000'000)).epsilon(2e-6));
        CHECK(ex.value == doctest::Approx(frozen[n]).epsilon(1e-5));
    }
    CHECK_THROWS_AS(cat::excess_constant(2), divergence_error);
}

TEST_CASE("log_excess_n2: beats 2 pi (log R - 1)") {
    constexpr double pi = 3.14159265358979323846;
    for (double R : {std::exp(1.0), 10.0, 100.0, 1e3})
        CHECK(cat::log_excess_n2(R) > 2.0 * pi * (std::log(R) - 1.0));
    CHECK(cat::log_excess_n2(std::exp(1.0)) > 0.0);
    CHECK_THROWS_AS(cat::log_excess_n2(1.5), std::domain_error);
}

TEST_CASE("normal line: bracketing window t < t_h < t + 1 for large t") {
    for (int n : {2, 3}) {
        double T0 = -1.0;
        for (double t = 2.0; t < 300.0; t *= 1.5) {
            const cat::NormalLineHit hit = cat::normal_line_hit(n, t);
            CHECK(hit.t_h > t);
            if (hit.delta < 1.0 && T0 < 0.0) T0 = t;
            if (T0 > 0.0) CHECK(hit.delta < 1.0);
        }
        CHECK(T0 > 0.0);
        CHECK(T0 <= 8.0);  // the window opens well before t = 8 for n = 2, 3
        MESSAGE("n=", n, " bracketing holds from T0=", T0);
    }
}

TEST_CASE("sheet separation slope: implicit differentiation vs Richardson oracle") {
    for (int n : {2, 4, 6}) {
        const double t = 12.0;
        numerics::DiffSpec d{1e-3, 3};
        const double fd =
            numerics::derivative([&](double x) { return cat::sheet_separation(n, x); }, t, d).value;
        CHECK(cat::sheet_separation_slope(n, t) == doctest::Approx(fd).epsilon(1e-9));
    }
}

TEST_CASE("two_sheet_flux: limit 2, scale invariance, monotone approach") {
    for (int n = 2; n <= 6; ++n)
        CHECK(std::abs(cat::two_sheet_flux(n, 1.0, 1e4) - 2.0) < 1e-3);

    CHECK(cat::two_sheet_flux(2, 2.0, 2e4) ==
          doctest::Approx(cat::two_sheet_flux(2, 1.0, 1e4)).epsilon(1e-12));

    for (int n : {2, 5}) {
        double prev = 0.0;
        for (double s : {4.0, 8.0, 16.0, 64.0, 256.0, 1024.0, 1e4}) {
            const double f = cat::two_sheet_flux(n, 1.0, s);
            CHECK(f >= prev - 1e-9);
            CHECK(f <= 2.0 + 1e-3);
            prev = f;
        }
    }
    CHECK_THROWS_AS(cat::two_sheet_flux(2, 1.0, 1.5), std::domain_error);
}

TEST_CASE("profile sampling: invariants and serial/parallel agreement") {
    const auto prof = cat::CatenoidProfile::sample(3, 2.0, 50.0, 1.05, ExecPolicy::parallel);
    const auto prof_serial = cat::CatenoidProfile::sample(3, 2.0, 50.0, 1.05, ExecPolicy::serial);
    REQUIRE(prof.samples.size() == prof_serial.samples.size());
    for (std::size_t i = 0; i < prof.samples.size(); ++i) {
        CHECK(prof.samples[i].h == prof_serial.samples[i].h);
        CHECK(prof.samples[i].area_cum == prof_serial.samples[i].area_cum);
    }
    CHECK(prof.samples.front().h == 0.0);
    for (std::size_t i = 1; i < prof.samples.size(); ++i) {
        CHECK(prof.samples[i].h > prof.samples[i - 1].h);
        CHECK(prof.samples[i].area_cum > prof.samples[i - 1].area_cum);
    }
    for (const auto& s : prof.samples) CHECK(s.h < 2.0 * 1.31103);  // r = 2 scales the cap
}

#include <cmath>

#include <doctest.h>

#include "catlab/catenoid.hpp"
#include "catlab/errors.hpp"
#include "catlab/numerics.hpp"
#include "catlab/revolution.hpp"

using namespace catlab;
namespace rev = catlab::revolution;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("leaf_area: closed values, evenness, decay") {
    CHECK(rev::leaf_area(2, 1.0, 0.0) == doctest::Approx(4.0 * pi));
    CHECK(rev::leaf_area(2, 1.0, 0.5) == doctest::Approx(4.0 * pi * 15.0 / 16.0).epsilon(1e-14));
    const double omega3 = catenoid::sphere_area(3);
    CHECK(rev::leaf_area(3, 2.0, 1.0) ==
          doctest::Approx(omega3 * std::pow(1.0 - std::pow(2.0, -6.0), 1.5)).epsilon(1e-14));
    for (double t : {0.1, 0.4, 0.8})
        CHECK(rev::leaf_area(4, 1.5, t) == rev::leaf_area(4, 1.5, -t));
    double prev = 1e300;
    for (double t : {0.0, 0.2, 0.5, 0.8, 0.95}) {
        const double area = rev::leaf_area(3, 1.0, t);
        CHECK(area < prev + 1e-300);
        prev = area;
    }
    CHECK_THROWS_AS(rev::leaf_area(2, 1.0, 1.0), std::domain_error);
}

TEST_CASE("leaf deficit: bounded by (n/2) Omega_n q, displayed form is high for n >= 3") {
    for (int n : {2, 3, 4, 6}) {
        for (double t : {0.1, 0.45, 0.9}) {
            const rev::LeafDeficit d = rev::leaf_area_deficit(n, 1.0, t);
            CHECK(d.deficit >= 0.0);
            CHECK(d.deficit <= d.bound * (1.0 + 1e-12));
            if (n == 2)
                CHECK(std::abs(d.displayed_gap) < 1e-12);
            else
                CHECK(d.displayed_gap < 0.0);
        }
    }
    // deficit stays accurate when q underflows the naive 1 - (1-q)^{n/2}
    const rev::LeafDeficit tiny = rev::leaf_area_deficit(4, 1.0, 1e-3);
    const double q = std::pow(1e-3, 8.0);
    CHECK(tiny.deficit == doctest::Approx(2.0 * catenoid::sphere_area(4) * q).epsilon(1e-10));
}

TEST_CASE("meridian_distance: brackets and shape") {
    CHECK(rev::meridian_distance(2, 1.0, 0.0) == 0.0);
    const double d9 = rev::meridian_distance(2, 1.0, 0.9);
    CHECK(d9 >= 0.9);
    CHECK(d9 <= 1.8);
    CHECK(rev::meridian_distance(4, 5.0, 0.1) == doctest::Approx(0.1).epsilon(1e-6));

    for (int n : {2, 3, 6}) {
        for (double a : {1.0, 2.0, 10.0}) {
            double prev_d = 0.0;
            double prev_ratio = 0.0;
            for (int i = 1; i <= 20; ++i) {
                const double t = 0.99 * a * i / 20.0;
                const double d = rev::meridian_distance(n, a, t);
                CHECK(d >= t);
                CHECK(d <= 2.0 * t);
                CHECK(d > prev_d);
                const double ratio = d / t;
                CHECK(ratio >= prev_ratio - 1e-12);  // superlinear
                prev_d = d;
                prev_ratio = ratio;
            }
        }
    }
}

TEST_CASE("principal curvatures: equator, interior positivity, FD oracle") {
    const rev::PrincipalCurvatures eq = rev::principal_curvatures(2, 1.0, 0.0);
    CHECK(eq.meridian == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(eq.sphere == doctest::Approx(1.0));

    for (auto [n, a, t] : {std::tuple{2, 1.0, 0.5}, std::tuple{3, 2.0, 1.9}}) {
        const rev::PrincipalCurvatures k = rev::principal_curvatures(n, a, t);
        CHECK(k.meridian > 0.0);
        CHECK(k.sphere > 0.0);
    }

    // curvature of the embedded profile curve from rho samples alone
    for (auto [n, a, t] : {std::tuple{2, 1.0, 0.5}, std::tuple{4, 2.0, 1.2}, std::tuple{6, 1.0, 0.8}}) {
        rev::RevolutionSurface surf(n, a);
        numerics::DiffSpec d{1e-4, 3};
        const double rp =
            numerics::derivative([&](double x) { return surf.rho(x); }, t, d).value;
        const double rpp =
            numerics::derivative([&](double x) { return surf.rho_p(x); }, t, d).value;
        const double g = 1.0 + rp * rp;
        const rev::PrincipalCurvatures k = rev::principal_curvatures(n, a, t);
        CHECK(k.meridian == doctest::Approx(-rpp / (g * std::sqrt(g))).epsilon(1e-6));
        CHECK(k.sphere == doctest::Approx(1.0 / (surf.rho(t) * std::sqrt(g))).epsilon(1e-6));
    }
}

TEST_CASE("ricci: non-negative across the family") {
    CHECK(rev::ricci_min_eigenvalue(2, 1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rev::ricci_min_eigenvalue(2, 1.0, 0.7) >= 0.0);
    for (int i = 0; i < 50; ++i) {
        const double t = -0.99 * 3.0 + i * (2.0 * 0.99 * 3.0 / 49.0);
        CHECK(rev::ricci_min_eigenvalue(5, 3.0, t) >= -1e-9);
    }
}

TEST_CASE("leaf mean curvature sign: away from the equator") {
    CHECK(rev::leaf_mean_curvature_sign(2, 1.0, 0.0) == 0);
    CHECK(rev::leaf_mean_curvature_sign(2, 1.0, 0.3) == 1);
    CHECK(rev::leaf_mean_curvature_sign(3, 2.0, -0.4) == -1);
}

TEST_CASE("equator degeneracy vanishes") {
    CHECK(std::abs(rev::equator_degeneracy(2, 1.0)) <= 1e-9);
    CHECK(std::abs(rev::equator_degeneracy(3, 1.0)) <= 1e-9);
    CHECK(std::abs(rev::equator_degeneracy(2, 10.0)) <= 1e-9);
}

TEST_CASE("cylinder limit: a -> infinity flattens the family") {
    const double omega2 = catenoid::sphere_area(2);
    double prev_gap = 1e300;
    double prev_ric = 1e300;
    for (double a : {1.0, 10.0, 100.0}) {
        const double gap = omega2 - rev::leaf_area(2, a, 0.5);
        const double ric = rev::ricci_min_eigenvalue(2, a, 0.5);
        const double kmer = rev::principal_curvatures(2, a, 0.5).meridian;
        CHECK(gap < prev_gap);
        CHECK(ric <= prev_ric);
        CHECK(ric >= 0.0);
        if (a == 100.0) {
            CHECK(gap < 1e-6);
            CHECK(ric < 1e-6);
            CHECK(std::abs(kmer) < 1e-4);
        }
        prev_gap = gap;
        prev_ric = ric;
    }
}

TEST_CASE("family_table: serial and parallel agree bitwise") {
    const auto par = rev::family_table(4, 2.0, 33, 0.99, ExecPolicy::parallel);
    const auto ser = rev::family_table(4, 2.0, 33, 0.99, ExecPolicy::serial);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].area == ser[i].area);
        CHECK(par[i].dist == ser[i].dist);
        CHECK(par[i].ric_min == ser[i].ric_min);
    }
}

#include <cmath>
#include <vector>

#include <doctest.h>

#include "catlab/catenoid.hpp"
#include "catlab/errors.hpp"
#include "catlab/surgery.hpp"

using namespace catlab;
namespace surg = catlab::surgery;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("neck_gain: floors, monotonicity, domain") {
    const double g2 = surg::neck_gain(2, 1e-3, 1e-1);
    CHECK(g2 >= 2.0 * pi * 1e-6 * (std::log(100.0) - 1.0));

    const double g3 = surg::neck_gain(3, 1e-3, 1e-1);
    CHECK(g3 >= 0.5 * surg::excess_constant_cached(3) * 1e-9);

    double prev = 0.0;
    for (double R : {4e-3, 1e-2, 1e-1}) {
        const double g = surg::neck_gain(3, 1e-3, R);
        CHECK(g > prev);
        prev = g;
    }
    CHECK_THROWS_AS(surg::neck_gain(2, 1e-3, 3e-3), std::domain_error);
    // R = e r sits below the R >= 4r domain; the zero of the n = 2 floor
    // 2 pi r^2 (log(R/r) - 1) is exercised through log_excess_n2 instead
    CHECK_THROWS_AS(surg::neck_gain(2, 1.0, std::exp(1.0)), std::domain_error);
    const double g4 = surg::neck_gain(2, 1.0, 4.0);
    CHECK(g4 >= 2.0 * pi * (std::log(4.0) - 1.0));
}

TEST_CASE("leaf_loss: closed n = 2 value, allowance, domain and regime errors") {
    const double r = 1e-3;
    const double d = 10.0 * r * std::abs(std::log(r));
    CHECK(d == doctest::Approx(0.069077552).epsilon(1e-8));
    const double loss = surg::leaf_loss(2, 1.0, r);
    // exact for n = 2, a = 1: Omega_2 d^4
    CHECK(loss == doctest::Approx(catenoid::sphere_area(2) * std::pow(d, 4)).epsilon(1e-12));
    CHECK(loss <= 2.0 * catenoid::sphere_area(2) * std::pow(d, 4));

    const double loss4 = surg::leaf_loss(4, 1.0, r);
    CHECK(loss4 <= 4.0 * catenoid::sphere_area(4) * std::pow(d, 8));

    CHECK_THROWS_AS(surg::leaf_loss(2, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(surg::leaf_loss(2, 1.0, 0.05), regime_error);  // d = 1.5 > a/2
}

TEST_CASE("leaf_loss: leading coefficient (n/2) Omega_n") {
    for (int n : {2, 4}) {
        const double target = 0.5 * n * catenoid::sphere_area(n);
        double prev_gap = 1e300;
        for (double r : {1e-3, 1e-5, 1e-7}) {
            const double d = 10.0 * r * std::abs(std::log(r));
            const double ratio = surg::leaf_loss(n, 1.0, r) / std::pow(d, 2.0 * n);
            const double gap = std::abs(ratio - target);
            CHECK(gap <= prev_gap + 1e-12);
            prev_gap = gap;
            if (r == 1e-7) CHECK(ratio == doctest::Approx(target).epsilon(1e-6));
        }
    }
}

TEST_CASE("certify: verdicts and measured thresholds on the decade grid") {
    const std::vector<double> grid = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    auto sqrt_rule = [](double r) { return std::sqrt(r); };

    const surg::SurgeryCertificate c3 = surg::certify(3, 1.0, sqrt_rule, grid);
    CHECK(c3.verdict);
    CHECK(c3.rows.size() == 5);
    // every neck gain is positive; the conclusion margin turns positive
    // between 1e-4 and 1e-5, so the certified threshold radius is 1e-4
    for (const auto& row : c3.rows) CHECK(row.gain > 0.0);
    CHECK(c3.r_star == doctest::Approx(1e-4).epsilon(1e-12));
    const double A3 = surg::excess_constant_cached(3);
    for (const auto& row : c3.rows)
        if (row.r < c3.r_star)
            CHECK(row.margin / std::pow(row.r, 3) >= 0.25 * A3 - 1e-2);

    const surg::SurgeryCertificate c2 = surg::certify(2, 1.0, sqrt_rule, grid);
    CHECK(c2.verdict);
    CHECK(c2.r_star == doctest::Approx(1e-3).epsilon(1e-12));
    for (const auto& row : c2.rows)
        if (row.r < c2.r_star)
            CHECK(row.margin > pi * row.r * row.r * (std::log(row.R / row.r) - 1.0));

    // serial evaluation matches the parallel one bitwise
    const surg::SurgeryCertificate c3s = surg::certify(3, 1.0, sqrt_rule, grid, ExecPolicy::serial);
    for (std::size_t i = 0; i < c3.rows.size(); ++i) {
        CHECK(c3.rows[i].gain == c3s.rows[i].gain);
        CHECK(c3.rows[i].margin == c3s.rows[i].margin);
    }
}

TEST_CASE("certify: out-of-regime grid and empty grid") {
    const std::vector<double> bad = {0.5};
    CHECK_THROWS_AS(surg::certify(2, 1.0, [](double r) { return std::sqrt(r); }, bad), regime_error);
    const std::vector<double> empty;
    CHECK_THROWS_AS(surg::certify(2, 1.0, [](double r) { return std::sqrt(r); }, empty),
                    std::invalid_argument);
}

TEST_CASE("certificate JSON carries the schema fields") {
    const std::vector<double> grid = {1e-3, 1e-4, 1e-5};
    auto cert = surg::certify(4, 1.0, [](double r) { return std::sqrt(r); }, grid);
    cert.neck_rule = "sqrt_r";
    const std::string json = surg::certificate_to_json(cert);
    CHECK(json.find("\"n\":4") != std::string::npos);
    CHECK(json.find("\"neck_rule\":\"sqrt_r\"") != std::string::npos);
    CHECK(json.find("\"r_star\":") != std::string::npos);
    CHECK(json.find("\"rows\":[{") != std::string::npos);
    CHECK(json.find("\"margin\":") != std::string::npos);
    // byte determinism of the serialization
    CHECK(json == surg::certificate_to_json(cert));
}

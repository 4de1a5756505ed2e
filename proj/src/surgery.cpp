#include "catlab/surgery.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "catlab/catenoid.hpp"
#include "catlab/errors.hpp"
#include "catlab/format.hpp"
#include "catlab/revolution.hpp"

namespace catlab::surgery {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double excess_constant_cached(int n) {
    if (n < 3 || n > 6) throw std::domain_error("excess_constant_cached: n must be in [3, 6]");
    static std::array<double, 7> cache{};
    static std::array<std::once_flag, 7> flags;
    std::call_once(flags[static_cast<std::size_t>(n)],
                   [n] { cache[static_cast<std::size_t>(n)] = catenoid::excess_constant(n).value; });
    return cache[static_cast<std::size_t>(n)];
}

double neck_gain(int n, double r, double R) {
    catenoid::require_dimension(n);
    if (!(r > 0.0)) throw std::domain_error("neck_gain: r <= 0");
    if (R < 4.0 * r) throw std::domain_error("neck_gain: requires R >= 4r");
    const catenoid::BallSlice slice = catenoid::slice_for_ball_radius(n, r, R);
    double gain;
    if (n == 2) {
        gain = r * r * catenoid::log_excess_n2(R / r);
        const double floor = 2.0 * kPi * r * r * (std::log(R / r) - 1.0);
        if (gain < floor)
            throw accuracy_error("neck_gain: below the n = 2 log floor", gain);
    } else {
        gain = catenoid::area_in_ball(n, r, R) - 2.0 * catenoid::disk_area(n, slice.t);
        const double floor = 0.5 * excess_constant_cached(n) * std::pow(r, n);
        if (gain < floor)
            throw accuracy_error("neck_gain: below half the excess constant", gain);
    }
    return gain;
}

double leaf_loss(int n, double a, double r) {
    catenoid::require_dimension(n);
    if (!(r > 0.0)) throw std::domain_error("leaf_loss: requires r > 0");
    const double d = 10.0 * r * std::abs(std::log(r));
    if (!(d < 0.5 * a)) throw regime_error("leaf_loss: separation 10 r |log r| >= a/2");
    if (!(r < std::exp(-1.0)))
        throw std::domain_error("leaf_loss: requires r < 1/e so the separation grows with r");
    const revolution::LeafDeficit deficit = revolution::leaf_area_deficit(n, a, d);
    const double allowance = n * catenoid::sphere_area(n) * std::pow(d, 2.0 * n);
    if (deficit.deficit > allowance * (1.0 + 1e-12))
        throw accuracy_error("leaf_loss: deficit above the d^{2n} allowance", deficit.deficit);
    return deficit.deficit;
}

SurgeryCertificate certify(int n, double a, const std::function<double(double)>& neck_rule,
                           std::span<const double> r_grid, ExecPolicy policy) {
    catenoid::require_dimension(n);
    if (r_grid.empty()) throw std::invalid_argument("certify: empty r grid");
    std::vector<double> rs(r_grid.begin(), r_grid.end());
    std::sort(rs.begin(), rs.end(), std::greater<double>());

    const double An = (n >= 3) ? excess_constant_cached(n) : 0.0;

    SurgeryCertificate cert;
    cert.n = n;
    cert.a = a;
    cert.rows.resize(rs.size());
    std::vector<char> conclusion(rs.size(), 0);

    for_each_index(policy, static_cast<std::ptrdiff_t>(rs.size()), [&](std::ptrdiff_t i) {
        const double r = rs[static_cast<std::size_t>(i)];
        const double R = neck_rule(r);
        CertificateRow row;
        row.r = r;
        row.R = R;
        row.loss = leaf_loss(n, a, r);  // regime guard fires before the gain's R >= 4r check
        row.gain = neck_gain(n, r, R);
        const double excess = row.gain - 2.0 * row.loss;
        bool ok;
        if (n >= 3) {
            row.margin = excess - 0.25 * An * std::pow(r, n);
            ok = row.margin > 0.0;
        } else {
            row.margin = excess;
            ok = excess > kPi * r * r * (std::log(R / r) - 1.0);
        }
        cert.rows[static_cast<std::size_t>(i)] = row;
        conclusion[static_cast<std::size_t>(i)] = ok ? 1 : 0;
    });

    // r_star: the largest grid radius below which the conclusion holds at
    // every strictly smaller grid radius.
    cert.r_star = rs.back();
    for (std::size_t i = 0; i < rs.size(); ++i) {
        bool all_below = true;
        for (std::size_t j = i + 1; j < rs.size(); ++j)
            if (!conclusion[j]) all_below = false;
        if (all_below) {
            cert.r_star = rs[i];
            break;
        }
    }
    cert.verdict = cert.r_star > rs.back();
    return cert;
}

std::string certificate_to_json(const SurgeryCertificate& cert) {
    std::ostringstream os;
    os << "{\"n\":" << cert.n << ",\"a\":" << format::shortest(cert.a) << ",\"neck_rule\":\""
       << cert.neck_rule << "\",\"r_star\":" << format::shortest(cert.r_star)
       << ",\"verdict\":" << (cert.verdict ? "true" : "false") << ",\"rows\":[";
    for (std::size_t i = 0; i < cert.rows.size(); ++i) {
        const auto& row = cert.rows[i];
        if (i) os << ",";
        os << "{\"r\":" << format::shortest(row.r) << ",\"R\":" << format::shortest(row.R)
           << ",\"gain\":" << format::shortest(row.gain) << ",\"loss\":" << format::shortest(row.loss)
           << ",\"margin\":" << format::shortest(row.margin) << "}";
    }
    os << "]}";
    return os.str();
}

}  // namespace catlab::surgery

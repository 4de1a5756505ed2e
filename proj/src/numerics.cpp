#include "catlab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "catlab/errors.hpp"

namespace catlab::numerics {

namespace {

using Fn = std::function<double(double)>;

struct AdaptState {
    const Fn* f;
    int max_depth;
    double width_floor;  // refusing to refine below this width caps noise chasing
    double err_acc = 0.0;
    bool converged = true;
};

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(AdaptState& st, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = (*st.f)(lm);
    const double frm = (*st.f)(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= st.max_depth || (b - a) < st.width_floor) {
        if (!(std::abs(delta) <= 15.0 * tol) && (b - a) >= st.width_floor) st.converged = false;
        st.err_acc += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

IntegralResult integrate_regular(const Fn& f, double a, double b, const QuadratureSpec& spec) {
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    // scale estimate from the two-panel refinement, not the crude 3-point rule
    const double flm = f(0.5 * (a + m));
    const double frm = f(0.5 * (m + b));
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double tol = spec.abs_tol + spec.rel_tol * std::abs(left + right);
    AdaptState st{&f, spec.max_depth, (b - a) * 1e-12};
    IntegralResult res;
    res.value = adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, 1) +
                adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, 1);
    res.error = st.err_acc;
    res.converged = st.converged && std::isfinite(res.value);
    return res;
}

}  // namespace

IntegralResult integrate(const Fn& f, double a, double b, const QuadratureSpec& spec) {
    if (!(a < b)) throw std::domain_error("integrate: requires a < b");
    if (spec.abs_tol <= 0.0 || spec.rel_tol <= 0.0 || spec.max_depth < 4)
        throw std::invalid_argument("integrate: invalid QuadratureSpec");
    if (!spec.singular_left) return integrate_regular(f, a, b, spec);
    // s = a + u^2 removes an (s-a)^{-1/2} endpoint singularity.
    const double umax = std::sqrt(b - a);
    // u0^2 must not round away against a, or f sees the singular endpoint
    const double u0 =
        std::max(std::sqrt(4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), 1.0)),
                 1e-10 * umax);
    auto g = [&](double u) {
        if (u <= u0) u = u0;
        return 2.0 * u * f(a + u * u);
    };
    return integrate_regular(g, 0.0, umax, spec);
}

IntegralResult integrate_improper(const Fn& f, double a, const QuadratureSpec& spec) {
    const double cut = std::max(2.0 * a, 10.0);
    IntegralResult head = integrate(f, a, cut, spec);

    // Tail via u = cut/s on (0, 1].
    auto g = [&](double u) { return f(cut / u) * cut / (u * u); };
    QuadratureSpec piece = spec;
    piece.singular_left = false;
    piece.abs_tol = spec.abs_tol / 8.0;

    IntegralResult tail = integrate_regular(g, 1.0 / 64.0, 1.0, piece);

    // Dyadic blocks toward u = 0; a convergent tail (|f| <= C s^{-p}, p > 1)
    // shrinks geometrically, a log-divergent one does not.
    double prev_block = std::numeric_limits<double>::infinity();
    double ratio = 0.0;
    int flat_count = 0;
    const double block_tol = spec.abs_tol / 8.0;
    bool block_converged = false;
    for (int k = 6; k < 60; ++k) {
        const double hi = std::ldexp(1.0, -k);
        const double lo = 0.5 * hi;
        IntegralResult blk = integrate_regular(g, lo, hi, piece);
        tail.value += blk.value;
        tail.error += blk.error;
        tail.converged = tail.converged && blk.converged;
        const double mag = std::abs(blk.value);
        if (std::isfinite(prev_block) && prev_block > 0.0) {
            ratio = mag / prev_block;
            if (ratio > 0.9)
                ++flat_count;
            else
                flat_count = 0;
        }
        prev_block = mag;
        if (flat_count >= 6)
            throw divergence_error("integrate_improper: tail blocks are not decreasing");
        const double remainder = (ratio > 0.0 && ratio < 1.0) ? mag * ratio / (1.0 - ratio) : mag;
        if (mag < block_tol && remainder < block_tol) {
            tail.error += remainder;
            block_converged = true;
            break;
        }
    }
    if (!block_converged) tail.converged = false;

    IntegralResult out;
    out.value = head.value + tail.value;
    out.error = head.error + tail.error;
    out.converged = head.converged && tail.converged;
    return out;
}

double fixed_quad(const Fn& f, double a, double b, int panels) {
    // 16-point Gauss-Legendre nodes/weights on [-1, 1], positive half.
    static constexpr std::array<double, 8> x = {
        0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
        0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
    static constexpr std::array<double, 8> w = {
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
    if (panels < 1) throw std::invalid_argument("fixed_quad: panels < 1");
    if (!(a <= b)) throw std::domain_error("fixed_quad: requires a <= b");
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < 8; ++i)
            acc += w[i] * (f(c - half * x[i]) + f(c + half * x[i]));
        total += acc * half;
    }
    return total;
}

double solve_scalar(const Fn& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::domain_error("solve_scalar: requires lo < hi");
    double fl = f(lo);
    double fh = f(hi);
    if (fl == 0.0) return lo;
    if (fh == 0.0) return hi;
    if (fl * fh > 0.0) throw bracket_error("solve_scalar: no sign change on bracket");
    int last_side = 0;
    for (int it = 0; it < 300; ++it) {
        double x;
        if (it % 8 == 7) {
            x = 0.5 * (lo + hi);  // periodic bisection keeps worst case linear
        } else {
            x = (fl * hi - fh * lo) / (fl - fh);
            const double width = hi - lo;
            if (!(x > lo + 1e-3 * width * 0.0) || !(x < hi) || !(x > lo))
                x = 0.5 * (lo + hi);
        }
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (fl * fx < 0.0) {
            hi = x;
            fh = fx;
            if (last_side == -1) fl *= 0.5;  // Illinois weighting
            last_side = -1;
        } else {
            lo = x;
            fl = fx;
            if (last_side == +1) fh *= 0.5;
            last_side = +1;
        }
        if (hi - lo < tol) return 0.5 * (lo + hi);
    }
    throw accuracy_error("solve_scalar: no convergence in 300 iterations", 0.5 * (lo + hi));
}

bool ode_bound_check(double a, double b, double f0, double T, const std::function<double(double, double)>& rhs,
                     int steps) {
    if (f0 < 0.0) throw std::domain_error("ode_bound_check: requires f0 >= 0");
    if (!(T > 0.0) || steps < 1) throw std::invalid_argument("ode_bound_check: bad T or steps");
    const double h = T / steps;
    if (!(h > 0.0) || !std::isfinite(h))
        throw accuracy_error("ode_bound_check: step size underflow", f0);
    auto envelope = [&](double t) {
        // e^{bt} f0 + (a/b)(e^{bt} - 1), with the b -> 0 limit a*t.
        const double bt = b * t;
        const double em = (std::abs(bt) < 1e-12) ? t * (1.0 + 0.5 * bt) : std::expm1(bt) / b;
        return std::exp(bt) * f0 + a * em;
    };
    double t = 0.0;
    double y = f0;
    for (int i = 0; i < steps; ++i) {
        const double k1 = rhs(t, y);
        const double k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = rhs(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if (!std::isfinite(y)) throw accuracy_error("ode_bound_check: solution blew up", y);
        const double env = envelope(t);
        if (y > env + 1e-9 * (1.0 + std::abs(env))) return false;
    }
    return true;
}

Derivative derivative(const Fn& f, double x, const DiffSpec& spec) {
    if (spec.base_step <= 0.0 || spec.richardson_levels < 1)
        throw std::invalid_argument("derivative: invalid DiffSpec");
    const int L = spec.richardson_levels;
    auto central = [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); };
    if (L == 1) {
        const double d = central(spec.base_step);
        return {d, std::abs(d - central(0.5 * spec.base_step))};
    }
    std::vector<std::vector<double>> T(L);
    double h = spec.base_step;
    for (int j = 0; j < L; ++j, h *= 0.5) {
        T[j].resize(j + 1);
        T[j][0] = central(h);
        double p4 = 4.0;
        for (int k = 1; k <= j; ++k, p4 *= 4.0)
            T[j][k] = (p4 * T[j][k - 1] - T[j - 1][k - 1]) / (p4 - 1.0);
    }
    return {T[L - 1][L - 1], std::abs(T[L - 1][L - 1] - T[L - 2][L - 2])};
}

}  // namespace catlab::numerics

#pragma once

#include <functional>

namespace catlab::numerics {

struct QuadratureSpec {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_depth = 52;
    // Integrand behaves like (s-a)^{-1/2} at the left endpoint; handled by
    // the substitution s = a + u^2, which makes the integrand bounded.
    bool singular_left = false;
};

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;      // accumulated error estimate
    bool converged = true;   // false: best estimate only, tolerance not met
};

// Adaptive Simpson quadrature of f over [a, b].
IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSpec& spec = {});

// Integral of f over [a, inf). Splits at cut = max(2a, 10); the tail is
// mapped to (0, 1] by u = cut/s and summed over dyadic blocks so that a
// non-decreasing tail raises divergence_error.
IntegralResult integrate_improper(const std::function<double(double)>& f, double a,
                                  const QuadratureSpec& spec = {});

// Composite 16-point Gauss-Legendre rule over `panels` equal panels.
// Error varies smoothly with the endpoints, which adaptive refinement does
// not guarantee; used where an integral is later finite-differenced.
double fixed_quad(const std::function<double(double)>& f, double a, double b, int panels);

// Bracketed scalar root (Illinois false position with bisection fallback).
// Requires f(lo)*f(hi) <= 0, else bracket_error.
double solve_scalar(const std::function<double(double)>& f, double lo, double hi,
                    double tol = 1e-13);

// Integrates f' = rhs(t, f) from f(0) = f0 over [0, T] with classical RK4 and
// checks f(t) <= e^{bt} f0 + (a/b)(e^{bt} - 1) at every step (limit a*t when
// b = 0). Returns the verdict of the comparison.
bool ode_bound_check(double a, double b, double f0, double T,
                     const std::function<double(double, double)>& rhs, int steps = 4096);

struct DiffSpec {
    double base_step = 1e-2;
    int richardson_levels = 3;  // >= 1; 1 means plain central difference
};

struct Derivative {
    double value = 0.0;
    double error = 0.0;
};

// Central difference with Richardson extrapolation.
Derivative derivative(const std::function<double(double)>& f, double x,
                      const DiffSpec& spec = {});

}  // namespace catlab::numerics

#pragma once

#include <complex>
#include <functional>

namespace rzl::quad {

struct Options {
    double tol_abs = 1e-10;   // absolute error target for the whole interval
    double max_panel = 0.0;   // initial panel width cap; 0 = whole interval
    int max_depth = 40;       // bisection depth per panel
    long max_evals = 50'000'000;
};

struct Result {
    double value = 0.0;
    double err = 0.0;  // accumulated error estimate
    long evals = 0;
};

struct ResultC {
    std::complex<double> value{0.0, 0.0};
    double err = 0.0;
    long evals = 0;
};

/// Adaptive 15-point Gauss-Kronrod over [a, b].  Panels are pre-split to at
/// most opts.max_panel so oscillatory integrands start resolved; the
/// recursion order is fixed, so results are reproducible.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});
ResultC integrate_c(const std::function<std::complex<double>(double)>& f, double a, double b,
                  const Options& opts = {});

/// (sin(u/2)/u)^2 with the u -> 0 limit 1/4.
double fejer_sq(double u);
/// (sin(psi u)/u)^2 with the u -> 0 limit psi^2.
double fejer_sq_psi(double u, double psi);

/// Sine integral Si(x) = int_0^x sin(v)/v dv, absolute accuracy ~1e-11.
double si(double x);

/// W(x) = Si(x) - (1 - cos x)/x  =  (1/2) int_{-x}^{x} (1-cos u)/u^2 du.
/// int_{-L}^{L} (1 - cos(a u))/(2 u^2) du = a W(aL) for a > 0.
double fejer_half_mass(double x);

/// int_{-L}^{L} (sin(u/2)/u)^2 cos(omega u) du via the Si closed form.
double fejer_sq_cos_integral(double L, double omega);

/// Quadrature of int_{-U}^{U} (sin(u/2)/u)^2 e^{i lambda u} du plus the
/// analytic completion of the non-oscillatory 1/(2u^2) tail, approximating
/// the full-line transform (pi/2) max(0, 1 - |lambda|) to O(1/U^2).
std::complex<double> fejer_transform_quad(double lambda, double U = 2e4, double tol = 1e-9);

/// The full-line transform value (pi/2) max(0, 1 - |lambda|).
double fejer_triangle(double lambda);

} // namespace rzl::quad

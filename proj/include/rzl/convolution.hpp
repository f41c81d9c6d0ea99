#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "rzl/zeta.hpp"

namespace rzl {

/// One verified instance of the kernel-weighted log zeta integral against
/// its von Mangoldt sum.
struct ConvolutionReport {
    double sigma = 0.0, t = 0.0;
    double psi = 0.0, H = 0.0;          // single-kernel form
    std::optional<double> x, theta;     // combined three-kernel form
    std::complex<double> lhs, rhs;
    double residual = 0.0;              // |lhs - rhs|
    double budget = 0.0;                // e^{|H|+2psi}/(log t)^2, or x/(log t)^2
    double empirical_ratio = 0.0;       // residual / budget, reported not asserted
    double quadrature_err = 0.0;
    bool indicator_heuristic = false;
};

/// Combined kernel: sum over y in {e, e^{3/2}, e^2} log N loglog N of
/// (sin(u/2)/u)^2 (1 + cos(theta + u log y)).  Nonnegative; K(0) =
/// (3/4)(1 + cos theta).
double kernel_K(double u, double theta, std::int64_t N);

/// Quadrature of K over [-U, U] plus the analytic 3/U completion of the
/// non-oscillatory tail; approximates the full-line mass 3 pi / 2.
double kernel_mass_quadrature(double theta, std::int64_t N, double U = 2e4, double tol = 1e-9);

/// Exact-form inner mass int_{-L}^{L} K(u) du via the sine integral.
double kernel_inner_mass(double L, double theta, std::int64_t N);

/// max(0, psi - |H - log n|).
double fejer_weight(double psi, double H, std::int64_t n);

struct LhsOptions {
    double tol = 1e-8;                // absolute quadrature tolerance
    const LogZetaGrid* grid = nullptr; // cached samples; nullptr = evaluate directly
    double zeta_tol = 1e-11;
};

/// (2/pi) int_{-(log t)^2}^{(log t)^2} log zeta(sigma + i(t+u))
/// (sin(psi u)/u)^2 e^{iHu} du, with oscillation-aware panels.
/// Returns the value and the quadrature error estimate.
std::pair<std::complex<double>, double> conv_lhs(double sigma, double t, double psi, double H,
                                                 const LhsOptions& opts = {});

/// sum over the support window (e^{H-psi}, e^{H+psi}) of
/// Lambda(n) max(0, psi - |H - log n|) / (n^{sigma+it} log n).
std::complex<double> conv_rhs(double sigma, double t, double psi, double H);

/// Full report with the zero-free gate enforced through the database.
ConvolutionReport verify_convolution(double sigma, double t, double psi, double H,
                                     const ZeroDatabase& db, const LhsOptions& opts = {});

/// Combined-kernel left side with weight (sin(u/2)/u)^2 (1 + cos(theta + u log x)).
std::pair<std::complex<double>, double> conv_combined_lhs(double sigma, double t, double x,
                                                          double theta,
                                                          const LhsOptions& opts = {});

/// (1/2) e^{i theta} sum_{e^{-1/2} x <= n <= e^{1/2} x}
/// Lambda(n)(1/2 - |log(n/x)|) / (n^{sigma+it} log n).
std::complex<double> conv_combined_rhs(double sigma, double t, double x, double theta);

/// Combined-form report; requires e^{1/2} <= x <= (log t)^2.
ConvolutionReport conv_combined(double sigma, double t, double x, double theta,
                                const ZeroDatabase& db, const LhsOptions& opts = {});

} // namespace rzl

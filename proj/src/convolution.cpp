#include "rzl/convolution.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rzl/errors.hpp"
#include "rzl/numtheory.hpp"
#include "rzl/quadrature.hpp"

namespace rzl {

namespace {

constexpr double kPi = std::numbers::pi;

// log y for the three kernel frequencies given N.
std::array<double, 3> kernel_log_freqs(std::int64_t N) {
    if (N < 16) throw invalid_parameter("kernel frequencies need N >= 16");
    double lN = std::log(static_cast<double>(N));
    double logA = std::log(lN * std::log(lN));
    return {1.0 + logA, 1.5 + logA, 2.0 + logA};
}

std::complex<double> log_zeta_at(double sigma, double h, const LhsOptions& opts) {
    if (opts.grid && opts.grid->covers(h) && opts.grid->sigma() == sigma)
        return opts.grid->value(h);
    return log_zeta(sigma, h, opts.zeta_tol).value;
}

} // namespace

double kernel_K(double u, double theta, std::int64_t N) {
    auto w = kernel_log_freqs(N);
    double base = quad::fejer_sq(u);
    double k = 0.0;
    for (double ly : w) k += base * (1.0 + std::cos(theta + u * ly));
    return k;
}

double kernel_mass_quadrature(double theta, std::int64_t N, double U, double tol) {
    auto w = kernel_log_freqs(N);
    quad::Options opts;
    opts.tol_abs = tol;
    opts.max_panel = 2.0 * kPi / (w[2] + 1.0);
    auto f = [&](double u) { return kernel_K(u, theta, N); };
    quad::Result r = quad::integrate(f, -U, U, opts);
    // The only non-oscillatory tail component is 3 * 1/(2u^2).
    return r.value + 3.0 / U;
}

double kernel_inner_mass(double L, double theta, std::int64_t N) {
    auto w = kernel_log_freqs(N);
    double m = 3.0 * quad::fejer_half_mass(L);
    for (double ly : w) m += std::cos(theta) * quad::fejer_sq_cos_integral(L, ly);
    return m;
}

double fejer_weight(double psi, double H, std::int64_t n) {
    if (!(psi > 0.0)) throw invalid_parameter("fejer_weight: psi must be positive");
    if (n < 1) throw invalid_parameter("fejer_weight: n must be >= 1");
    return std::max(0.0, psi - std::abs(H - std::log(static_cast<double>(n))));
}

std::pair<std::complex<double>, double> conv_lhs(double sigma, double t, double psi, double H,
                                                 const LhsOptions& opts) {
    if (!(t >= 15.0)) throw invalid_parameter("conv_lhs: t must be >= 15");
    if (!(psi > 0.0)) throw invalid_parameter("conv_lhs: psi must be positive");
    const double L = std::log(t) * std::log(t);

    quad::Options qo;
    qo.tol_abs = opts.tol;
    qo.max_panel = std::min(4.0, 2.0 * kPi / std::max(1.0, std::abs(H)));
    auto f = [&](double u) -> std::complex<double> {
        std::complex<double> lz = log_zeta_at(sigma, t + u, opts);
        double kern = quad::fejer_sq_psi(u, psi);
        std::complex<double> osc(std::cos(H * u), std::sin(H * u));
        return (2.0 / kPi) * lz * kern * osc;
    };
    quad::ResultC r = quad::integrate_c(f, -L, L, qo);
    return {r.value, r.err};
}

std::complex<double> conv_rhs(double sigma, double t, double psi, double H) {
    if (!(psi > 0.0)) throw invalid_parameter("conv_rhs: psi must be positive");
    double lo = std::exp(H - psi);
    double hi = std::exp(H + psi);
    if (hi > 1e12) throw cap_exceeded("conv_rhs: support window exceeds the sieve cap");

    auto first = static_cast<std::int64_t>(std::floor(lo)) + 1;
    auto last = static_cast<std::int64_t>(std::ceil(hi));
    if (first < 1) first = 1;

    std::complex<long double> sum(0.0L, 0.0L);
    const std::complex<long double> s(static_cast<long double>(sigma),
                                      static_cast<long double>(t));
    for (std::int64_t n = first; n <= last; ++n) {
        if (n < 2) continue;
        double lam = von_mangoldt(n);
        if (lam == 0.0) continue;
        double wt = fejer_weight(psi, H, n);
        if (wt == 0.0) continue;
        long double ln = std::log(static_cast<long double>(n));
        long double mag = std::exp(-s.real() * ln);
        std::complex<long double> nps(mag * std::cos(-s.imag() * ln),
                                      mag * std::sin(-s.imag() * ln));
        sum += static_cast<long double>(lam * wt) * nps / ln;
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

ConvolutionReport verify_convolution(double sigma, double t, double psi, double H,
                                     const ZeroDatabase& db, const LhsOptions& opts) {
    if (!(t >= 15.0)) throw invalid_parameter("verify_convolution: t must be >= 15");
    Indicator ind = indicator_I(sigma, t, db);
    if (ind.value == 0)
        throw precondition_violation(
            "verify_convolution: zero-free hypothesis fails at sigma = " + std::to_string(sigma) +
            ", t = " + std::to_string(t) + " (database certifies a zero in range)");

    ConvolutionReport rep;
    rep.sigma = sigma;
    rep.t = t;
    rep.psi = psi;
    rep.H = H;
    rep.indicator_heuristic = ind.heuristic;
    auto [lhs, qerr] = conv_lhs(sigma, t, psi, H, opts);
    rep.lhs = lhs;
    rep.quadrature_err = qerr;
    rep.rhs = conv_rhs(sigma, t, psi, H);
    rep.residual = std::abs(rep.lhs - rep.rhs);
    rep.budget = std::exp(std::abs(H) + 2.0 * psi) / (std::log(t) * std::log(t));
    rep.empirical_ratio = rep.residual / rep.budget;
    return rep;
}

std::pair<std::complex<double>, double> conv_combined_lhs(double sigma, double t, double x,
                                                          double theta, const LhsOptions& opts) {
    if (!(t >= 15.0)) throw invalid_parameter("conv_combined_lhs: t must be >= 15");
    const double L = std::log(t) * std::log(t);
    if (!(x >= std::exp(0.5)) || !(x <= L))
        throw invalid_parameter("conv_combined_lhs: x must lie in [e^{1/2}, (log t)^2]");

    const double lx = std::log(x);
    quad::Options qo;
    qo.tol_abs = opts.tol;
    qo.max_panel = std::min(4.0, 2.0 * kPi / (lx + 1.0));
    auto f = [&](double u) -> std::complex<double> {
        std::complex<double> lz = log_zeta_at(sigma, t + u, opts);
        double kern = quad::fejer_sq(u) * (1.0 + std::cos(theta + u * lx));
        return (2.0 / kPi) * lz * kern;
    };
    quad::ResultC r = quad::integrate_c(f, -L, L, qo);
    return {r.value, r.err};
}

std::complex<double> conv_combined_rhs(double sigma, double t, double x, double theta) {
    std::complex<double> base = conv_rhs(sigma, t, 0.5, std::log(x));
    return 0.5 * std::complex<double>(std::cos(theta), std::sin(theta)) * base;
}

ConvolutionReport conv_combined(double sigma, double t, double x, double theta,
                                const ZeroDatabase& db, const LhsOptions& opts) {
    Indicator ind = indicator_I(sigma, t, db);
    if (ind.value == 0)
        throw precondition_violation("conv_combined: zero-free hypothesis fails at t = " +
                                     std::to_string(t));
    ConvolutionReport rep;
    rep.sigma = sigma;
    rep.t = t;
    rep.psi = 0.5;
    rep.H = 0.0;
    rep.x = x;
    rep.theta = theta;
    rep.indicator_heuristic = ind.heuristic;
    auto [lhs, qerr] = conv_combined_lhs(sigma, t, x, theta, opts);
    rep.lhs = lhs;
    rep.quadrature_err = qerr;
    rep.rhs = conv_combined_rhs(sigma, t, x, theta);
    rep.residual = std::abs(rep.lhs - rep.rhs);
    rep.budget = x / (std::log(t) * std::log(t));
    rep.empirical_ratio = rep.residual / rep.budget;
    return rep;
}

} // namespace rzl

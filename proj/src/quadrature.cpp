#include "rzl/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "rzl/errors.hpp"

namespace rzl::quad {

namespace {

// 15-point Kronrod nodes on [-1, 1] (odd-indexed nodes form the embedded
// 7-point Gauss rule).  Standard QUADPACK dqk15 constants.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Value>
struct Traits;

template <>
struct Traits<double> {
    static double abs(double v) { return std::abs(v); }
};
template <>
struct Traits<std::complex<double>> {
    static double abs(const std::complex<double>& v) { return std::hypot(v.real(), v.imag()); }
};

template <typename Value>
struct Panel {
    Value value;
    double err;
};

template <typename Value, typename Fn>
Panel<Value> gk15(const Fn& f, double a, double b, long& evals) {
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    Value fc = f(c);
    Value res_g = kWg[3] * fc;
    Value res_k = kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        Value f1 = f(c - x);
        Value f2 = f(c + x);
        Value fsum = f1 + f2;
        if (j % 2 == 1) res_g += kWg[j / 2] * fsum;
        res_k += kWgk[j] * fsum;
    }
    evals += 15;
    res_g *= h;
    res_k *= h;
    // Raw Gauss/Kronrod difference; a conservative estimate for the Kronrod
    // value.
    double err = Traits<Value>::abs(res_k - res_g);
    return {res_k, err};
}

template <typename Value, typename Fn>
void adapt(const Fn& f, double a, double b, double tol, int depth, const Options& opts,
           Value& total, double& err_total, long& evals) {
    if (evals > opts.max_evals)
        throw cap_exceeded("quadrature evaluation cap exceeded");
    Panel<Value> p = gk15<Value>(f, a, b, evals);
    if (p.err <= tol || depth >= opts.max_depth) {
        total += p.value;
        err_total += p.err;
        return;
    }
    double c = 0.5 * (a + b);
    adapt(f, a, c, 0.5 * tol, depth + 1, opts, total, err_total, evals);
    adapt(f, c, b, 0.5 * tol, depth + 1, opts, total, err_total, evals);
}

template <typename Value, typename Fn>
void run(const Fn& f, double a, double b, const Options& opts, Value& total, double& err,
         long& evals) {
    if (!(a < b)) return;
    long panels = 1;
    if (opts.max_panel > 0.0) {
        panels = static_cast<long>(std::ceil((b - a) / opts.max_panel));
        panels = std::max<long>(panels, 1);
        if (panels > 20'000'000) throw cap_exceeded("quadrature pre-split too fine");
    }
    double w = (b - a) / static_cast<double>(panels);
    double tol_per = opts.tol_abs / static_cast<double>(panels);
    for (long i = 0; i < panels; ++i) {
        double lo = a + w * static_cast<double>(i);
        double hi = (i == panels - 1) ? b : a + w * static_cast<double>(i + 1);
        adapt(f, lo, hi, tol_per, 0, opts, total, err, evals);
    }
}

} // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts) {
    Result r;
    run<double>(f, a, b, opts, r.value, r.err, r.evals);
    return r;
}

ResultC integrate_c(const std::function<std::complex<double>(double)>& f, double a, double b,
                  const Options& opts) {
    ResultC r;
    run<std::complex<double>>(f, a, b, opts, r.value, r.err, r.evals);
    return r;
}

double fejer_sq(double u) {
    if (std::abs(u) < 1e-4) {
        double x = 0.5 * u;
        double s = 1.0 - x * x / 6.0 + x * x * x * x / 120.0; // sin(x)/x
        return 0.25 * s * s;
    }
    double q = std::sin(0.5 * u) / u;
    return q * q;
}

double fejer_sq_psi(double u, double psi) {
    if (std::abs(psi * u) < 1e-4) {
        double x = psi * u;
        double s = 1.0 - x * x / 6.0 + x * x * x * x / 120.0; // sin(x)/(x)
        return psi * psi * s * s;
    }
    double q = std::sin(psi * u) / u;
    return q * q;
}

double si(double x) {
    if (x < 0.0) return -si(-x);
    if (x == 0.0) return 0.0;
    if (x <= 25.0) {
        // Power series in extended precision; largest term stays below
        // ~2.4e8, so the cancellation floor is ~1e-11.
        long double xv = x;
        long double term = xv;
        long double sum = xv;
        long double x2 = xv * xv;
        for (int k = 1; k < 90; ++k) {
            term *= -x2 / static_cast<long double>((2 * k) * (2 * k + 1));
            long double add = term / static_cast<long double>(2 * k + 1);
            sum += add;
            if (std::abs(static_cast<double>(add)) < 1e-22 * std::abs(static_cast<double>(sum)))
                break;
        }
        return static_cast<double>(sum);
    }
    // Asymptotic: Si = pi/2 - cos(x) f(x) - sin(x) g(x), truncated at the
    // smallest term.
    long double xv = x;
    long double inv2 = 1.0L / (xv * xv);
    long double fterm = 1.0L / xv, fsum = fterm;
    long double gterm = 1.0L / (xv * xv), gsum = gterm;
    long double prev_f = std::abs((double)fterm);
    for (int k = 1; k < 40; ++k) {
        fterm *= -static_cast<long double>((2 * k) * (2 * k - 1)) * inv2;
        if (std::abs(static_cast<double>(fterm)) > prev_f) break;
        prev_f = std::abs(static_cast<double>(fterm));
        fsum += fterm;
        gterm *= -static_cast<long double>((2 * k) * (2 * k + 1)) * inv2;
        gsum += gterm;
    }
    long double v = std::numbers::pi_v<long double> / 2.0L -
                    std::cos(xv) * fsum - std::sin(xv) * gsum;
    return static_cast<double>(v);
}

double fejer_half_mass(double x) {
    if (x == 0.0) return 0.0;
    if (std::abs(x) < 1e-8) return 0.5 * x; // Si(x) ~ x, (1-cos x)/x ~ x/2
    return si(x) - (1.0 - std::cos(x)) / x;
}

double fejer_sq_cos_integral(double L, double omega) {
    // (sin(u/2)/u)^2 cos(w u) = [ (1-cos((w+1)u)) + (1-cos(|w-1|u)) - 2(1-cos(w u)) ] / (4u^2)
    omega = std::abs(omega);
    auto piece = [L](double a) { return a > 0.0 ? a * fejer_half_mass(a * L) : 0.0; };
    return 0.5 * (piece(omega + 1.0) + piece(std::abs(omega - 1.0))) - piece(omega);
}

double fejer_triangle(double lambda) {
    return 0.5 * std::numbers::pi * std::max(0.0, 1.0 - std::abs(lambda));
}

std::complex<double> fejer_transform_quad(double lambda, double U, double tol) {
    if (!(U > 10.0)) throw invalid_parameter("fejer_transform_quad: U must exceed 10");
    Options opts;
    opts.tol_abs = tol;
    opts.max_panel = 2.0 * std::numbers::pi / std::max(1.0, std::abs(lambda) + 1.0);
    auto f = [lambda](double u) {
        return fejer_sq(u) * std::complex<double>(std::cos(lambda * u), std::sin(lambda * u));
    };
    ResultC r = integrate_c(f, -U, U, opts);
    // Beyond U the integrand is (1 - cos u) e^{i lambda u} / (2u^2); its only
    // non-oscillatory component is 1/(2u^2) when lambda = 0 and -1/(4u^2)
    // when |lambda| = 1.  Complete those tails analytically.
    double dc = 0.0;
    if (lambda == 0.0)
        dc = 1.0;
    else if (std::abs(std::abs(lambda) - 1.0) < 1e-14)
        dc = -0.5;
    return r.value + std::complex<double>(dc / U, 0.0);
}

} // namespace rzl::quad

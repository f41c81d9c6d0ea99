#include "rzl/params.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "rzl/errors.hpp"
#include "rzl/util.hpp"

namespace rzl {

namespace {

constexpr double kE2mE = 4.670774270471604; // e^2 - e

[[noreturn]] void fail(const std::string& what) { throw invalid_parameter(what); }

} // namespace

double c_sigma(double sigma) {
    if (!(sigma > 0.5) || !(sigma < 1.0)) fail("c_sigma: sigma must lie in (1/2, 1)");
    double L = std::abs(std::log(2.0 * sigma - 1.0));
    return L / (L + 1.0);
}

double gamma_max(double sigma, double b) {
    if (!(sigma > 0.5) || !(sigma < 1.0)) fail("gamma_max: sigma must lie in (1/2, 1)");
    if (!(b > 0.0) || !(b < 1.0)) fail("gamma_max: b must lie in (0, 1)");
    double v = c_sigma(sigma) * kE2mE * (b - 1.0) / std::log(b);
    return std::min(1.0, v);
}

double sigma_star() {
    // g(sigma) = C(sigma)(e^2-e) - 1 is strictly decreasing; bisect.
    double lo = 0.5 + 1e-12, hi = 1.0 - 1e-12;
    auto g = [](double s) { return c_sigma(s) * kE2mE - 1.0; };
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Params Params::validate(const RawParams& raw, bool sets_required) {
    if (!(raw.sigma > 0.5) || !(raw.sigma < 1.0)) fail("sigma must lie in (1/2, 1)");
    if (!(raw.beta > 0.0) || !(raw.beta < 1.0)) fail("beta must lie in (0, 1)");
    double kappa_cap = std::min(raw.sigma - 0.5, 1.0 - raw.beta);
    if (!(raw.kappa > 0.0) || !(raw.kappa < kappa_cap)) {
        std::ostringstream ss;
        ss << "kappa = " << raw.kappa << " must lie in (0, min(sigma-1/2, 1-beta) = " << kappa_cap
           << ")";
        fail(ss.str());
    }
    if (!(raw.T >= 100.0)) fail("T must be >= 100");
    if (!(raw.a > 1.0)) fail("a must be > 1");
    if (!(raw.gamma > 0.0) || !(raw.gamma < 1.0)) fail("gamma must lie in (0, 1)");
    if (!(raw.b > 0.0) || !(raw.b < 1.0)) fail("b must lie in (0, 1)");
    if (!std::isfinite(raw.theta)) fail("theta must be finite");

    Params p{};
    p.sigma = raw.sigma;
    p.beta = raw.beta;
    p.kappa = raw.kappa;
    p.theta = raw.theta;
    p.T = raw.T;
    p.a = raw.a;
    p.gamma = raw.gamma;
    p.b = raw.b;

    if (raw.N_override) {
        if (*raw.N_override < 1) fail("N override must be >= 1");
        p.N = *raw.N_override;
        p.n_overridden = true;
    } else {
        p.N = floor_nudged(std::pow(raw.T, raw.kappa));
    }
    if (p.N < 1) fail("derived N = floor(T^kappa) is below 1");
    if (sets_required && p.N < 16) {
        std::ostringstream ss;
        ss << "N = " << p.N << " is below 16: the prime windows degenerate, set "
           << "construction refused";
        fail(ss.str());
    }

    p.abs_log_2s1 = std::abs(std::log(2.0 * p.sigma - 1.0));
    p.f_p = 1.0 / std::sqrt(p.abs_log_2s1);
    p.log_N = std::log(static_cast<double>(p.N));
    p.loglog_N = p.log_N > 1.0 ? std::log(p.log_N) : 0.0;
    p.k_max = p.a * p.log_N / p.abs_log_2s1;
    p.k_min = p.gamma * p.log_N / p.abs_log_2s1;
    return p;
}

BoundRecord theorem_bound(const Params& p) {
    BoundRecord r{};
    r.upsilon_shape = std::min(1.0, kE2mE * c_sigma(p.sigma));
    r.kappa_factor = std::pow(p.kappa, 1.0 - p.sigma) / std::sqrt(p.abs_log_2s1);
    double lt = std::log(p.T);
    r.height_factor = std::pow(lt, 1.0 - p.sigma) / std::pow(std::log(lt), p.sigma);
    r.c = 1.0;
    r.value = r.c * r.upsilon_shape * r.kappa_factor * r.height_factor;
    return r;
}

} // namespace rzl

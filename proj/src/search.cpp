#include "rzl/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rzl/errors.hpp"
#include "rzl/util.hpp"

namespace rzl {

namespace {

double objective(double theta, const std::complex<double>& w) {
    return std::cos(theta) * w.real() + std::sin(theta) * w.imag();
}

double eval_objective(double sigma, double theta, double t) {
    return objective(theta, log_zeta(sigma, t).value);
}

// Golden-section maximization on [lo, hi]; derivative-free, deterministic.
std::pair<double, double> golden_max(double sigma, double theta, double lo, double hi,
                                     double t_tol, int max_iters, int& iters) {
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = eval_objective(sigma, theta, x1);
    double f2 = eval_objective(sigma, theta, x2);
    iters = 0;
    while (b - a > t_tol && iters < max_iters) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = eval_objective(sigma, theta, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = eval_objective(sigma, theta, x1);
        }
        ++iters;
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

} // namespace

GridSamples sample_log_grid(double sigma, double t_lo, double t_hi, long n, int threads) {
    if (!(t_lo > 1.0) || !(t_hi > t_lo)) throw invalid_parameter("sample_log_grid: bad range");
    if (n < 2) throw invalid_parameter("sample_log_grid: need at least 2 grid points");

    GridSamples g;
    g.sigma = sigma;
    g.t.resize(static_cast<std::size_t>(n));
    g.w.resize(static_cast<std::size_t>(n));
    const double l0 = std::log(t_lo), l1 = std::log(t_hi);
    for (long i = 0; i < n; ++i)
        g.t[static_cast<std::size_t>(i)] =
            std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.t.front() = t_lo;
    g.t.back() = t_hi;

    std::vector<char> failed(static_cast<std::size_t>(n), 0);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
        try {
            g.w[i] = log_zeta(sigma, g.t[i]).value;
        } catch (const std::exception&) {
            g.w[i] = {std::numeric_limits<double>::quiet_NaN(),
                      std::numeric_limits<double>::quiet_NaN()};
            failed[i] = 1;
        }
    });
    for (char c : failed) g.skipped += c;
    return g;
}

SearchResult scan_cached(const GridSamples& g, double theta, const RefineOptions& ropts) {
    const std::size_t n = g.t.size();
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isnan(g.w[i].real())) order.push_back(i);
    if (order.empty()) throw precondition_violation("scan: every grid point failed");

    // rank by objective, tie-broken by t for a deterministic merge
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double fa = objective(theta, g.w[a]);
        double fb = objective(theta, g.w[b]);
        if (fa != fb) return fa > fb;
        return g.t[a] < g.t[b];
    });

    SearchResult res;
    res.theta = theta;
    res.grid_points = static_cast<long>(n);
    res.skipped_points = g.skipped;
    res.t_star = g.t[order[0]];
    res.value = objective(theta, g.w[order[0]]);

    int total_iters = 0;
    const int top = std::min<int>(ropts.top_candidates, static_cast<int>(order.size()));
    for (int c = 0; c < top; ++c) {
        std::size_t i = order[static_cast<std::size_t>(c)];
        double lo = i > 0 ? g.t[i - 1] : g.t[i];
        double hi = i + 1 < n ? g.t[i + 1] : g.t[i];
        if (!(hi > lo)) continue;
        int iters = 0;
        try {
            auto [tb, fb] = golden_max(g.sigma, theta, lo, hi, ropts.t_tol, ropts.max_iters, iters);
            total_iters += iters;
            if (fb > res.value || (fb == res.value && tb < res.t_star)) {
                res.value = fb;
                res.t_star = tb;
            }
        } catch (const std::exception&) {
            // refinement failure leaves the grid candidate in place
        }
    }
    res.refinement_iters = total_iters;
    res.min_modulus = std::exp(-res.value);
    return res;
}

SearchResult scan_range(double sigma, double theta, double t_lo, double t_hi, long grid_n,
                        int threads, const RefineOptions& ropts) {
    GridSamples g = sample_log_grid(sigma, t_lo, t_hi, grid_n, threads);
    return scan_cached(g, theta, ropts);
}

SearchResult scan_max(double sigma, double theta, double beta, double T, long grid_n,
                      int threads) {
    if (!(beta > 0.0) || !(beta < 1.0)) throw invalid_parameter("scan_max: beta must be in (0,1)");
    if (!(T >= 100.0)) throw invalid_parameter("scan_max: T must be >= 100");
    double t_lo = std::pow(T, beta);
    if (!(t_lo > 2.0)) throw invalid_parameter("scan_max: T^beta must exceed 2");
    return scan_range(sigma, theta, t_lo, T, grid_n, threads);
}

SearchResult corollary_min_modulus(double sigma, double beta, double T, long grid_n,
                                   int threads) {
    return scan_max(sigma, std::numbers::pi, beta, T, grid_n, threads);
}

std::vector<SearchResult> theta_sweep(double sigma, double beta, double T,
                                      std::span<const double> thetas, long grid_n, int threads) {
    double t_lo = std::pow(T, beta);
    GridSamples g = sample_log_grid(sigma, t_lo, T, grid_n, threads);
    std::vector<SearchResult> out;
    out.reserve(thetas.size());
    for (double th : thetas) out.push_back(scan_cached(g, th));
    return out;
}

TheoremComparison compare_to_theorem(const SearchResult& r, const Params& p) {
    TheoremComparison c;
    c.bound_value = theorem_bound(p).value;
    c.ratio = r.value / c.bound_value;
    return c;
}

} // namespace rzl

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rzl/params.hpp"
#include "rzl/zeta.hpp"

namespace rzl {

struct SearchResult {
    double t_star = 0.0;
    double value = 0.0;          // max of Re(e^{-i theta} log zeta(sigma + i t))
    long grid_points = 0;
    int refinement_iters = 0;
    double bound_value = 0.0;    // reference lower-bound shape (c = 1)
    double ratio_to_bound = 0.0;
    double theta = 0.0;
    double min_modulus = 0.0;    // exp(-value), meaningful for theta = pi
    long skipped_points = 0;
};

/// Cached complex log zeta samples on a log-uniform grid; evaluation points
/// where the continuation failed carry NaN.
struct GridSamples {
    double sigma = 0.0;
    std::vector<double> t;
    std::vector<std::complex<double>> w;
    long skipped = 0;
};

GridSamples sample_log_grid(double sigma, double t_lo, double t_hi, long n, int threads = 1);

struct RefineOptions {
    int top_candidates = 5;
    double t_tol = 1e-6;
    int max_iters = 200;
};

/// Maximum of Re(e^{-i theta} w) over the cached grid followed by bracketed
/// derivative-free refinement around the leading candidates.
SearchResult scan_cached(const GridSamples& g, double theta, const RefineOptions& ropts = {});

/// Scan [t_lo, t_hi] directly.
SearchResult scan_range(double sigma, double theta, double t_lo, double t_hi, long grid_n,
                        int threads = 1, const RefineOptions& ropts = {});

/// The headline objective over [T^beta, T].
SearchResult scan_max(double sigma, double theta, double beta, double T, long grid_n,
                      int threads = 1);

/// theta = pi specialization: the maximum of -log|zeta|, with the smallest
/// modulus reported as exp(-value).
SearchResult corollary_min_modulus(double sigma, double beta, double T, long grid_n,
                                   int threads = 1);

/// One result per theta, sharing one cached grid.
std::vector<SearchResult> theta_sweep(double sigma, double beta, double T,
                                      std::span<const double> thetas, long grid_n,
                                      int threads = 1);

struct TheoremComparison {
    double bound_value = 0.0;
    double ratio = 0.0;
};
TheoremComparison compare_to_theorem(const SearchResult& r, const Params& p);

} // namespace rzl

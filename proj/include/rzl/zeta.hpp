#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace rzl {

struct EmResult {
    std::complex<double> value;
    double err = 0.0; // managed error estimate
    int terms = 0;    // truncation point of the main sum
};

/// zeta(sigma + i t) by Euler-Maclaurin summation in extended precision.
/// sigma >= 0.4, |t| <= 1e8.  Throws accuracy_error when the correction
/// series cannot reach tol at this height.
EmResult zeta_em(double sigma, double t, double tol = 1e-13);

/// One branch-tracked sample of log zeta(sigma + i t): seeded on the line
/// Re s = 2, where the Dirichlet series pins the branch, then continued
/// horizontally with principal-branch increments below pi/2 per step.
struct LogZetaSample {
    double sigma = 0.0, t = 0.0;
    std::complex<double> value;  // log zeta
    std::complex<double> zeta;
    double err_est = 0.0;
    int path_steps = 0;
};
LogZetaSample log_zeta(double sigma, double t, double tol = 1e-12);

/// Diagnostic: the prime-power series sum_n Lambda(n) / (n^{s0+it} log n)
/// truncated at prime_limit, for s0 >= 2.  Converges to the same branch the
/// continuation is seeded with; tail is O(1/(X log X)).
std::complex<double> log_zeta_prime_series(double sigma0, double t, std::int64_t prime_limit);

/// Known zeros: ascending critical-line ordinates plus optional off-line
/// entries, and the height below which the list is certified complete.
/// File format: header `verified_height <real>`, then one ordinate per
/// line, or `re im` for an off-line entry.
struct ZeroDatabase {
    std::vector<double> ordinates;
    std::vector<std::pair<double, double>> offline; // (re, im)
    double verified_height = 0.0;

    static ZeroDatabase load(const std::string& path);
    static ZeroDatabase parse(const std::string& text);
};

/// Zero-free gate: 0 iff the database certifies a zero with Re >= sigma
/// within (log t)^2 of height t.  `heuristic` marks verdicts outside the
/// certified height range.
struct Indicator {
    int value = 1;
    bool heuristic = false;
};
Indicator indicator_I(double sigma, double t, const ZeroDatabase& db);

/// Branch-continuous log zeta samples on a uniform height grid at fixed
/// sigma, with cubic interpolation in between.  Build is parallel over
/// independently anchored chunks; results do not depend on thread count.
class LogZetaGrid {
public:
    LogZetaGrid(double sigma, double h_lo, double h_hi, double step, double tol = 1e-10,
                int threads = 1);

    std::complex<double> value(double h) const;
    bool covers(double h) const { return h >= h_lo_ && h <= h_hi_; }
    double sigma() const { return sigma_; }
    double h_lo() const { return h_lo_; }
    double h_hi() const { return h_hi_; }
    double step() const { return step_; }
    double interp_err() const { return interp_err_; }
    const std::vector<std::complex<double>>& samples() const { return samples_; }

private:
    double sigma_, h_lo_, h_hi_, step_;
    double interp_err_ = 0.0;
    std::vector<std::complex<double>> samples_;
};

} // namespace rzl

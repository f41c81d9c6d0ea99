#pragma once

#include <cstdint>
#include <optional>

namespace rzl {

/// Raw user inputs before validation.
struct RawParams {
    double sigma = 0.75;  // abscissa, in (1/2, 1)
    double beta = 0.3;    // lower range exponent, in (0, 1)
    double kappa = 0.2;   // resonator size exponent, in (0, min(sigma-1/2, 1-beta))
    double theta = 0.0;   // rotation angle, radians
    double T = 1e6;       // height parameter, >= 100
    double a = 1.5;       // factor-count multiplier, > 1
    double gamma = 0.5;   // large-factor-count threshold multiplier, in (0, 1)
    double b = 0.9;       // tilt parameter, in (0, 1)
    // Explicit resonator budget for desk-scale set construction; when absent
    // N = floor(T^kappa).
    std::optional<std::int64_t> N_override;
};

/// Validated parameters plus every derived scalar.
struct Params {
    double sigma, beta, kappa, theta, T, a, gamma, b;
    std::int64_t N;       // floor(T^kappa) unless overridden
    double abs_log_2s1;   // |log(2 sigma - 1)|
    double f_p;           // 1 / sqrt(|log(2 sigma - 1)|), common prime weight
    double k_max;         // a log N / |log(2 sigma - 1)|
    double k_min;         // gamma log N / |log(2 sigma - 1)|
    double log_N;
    double loglog_N;
    bool n_overridden = false;

    /// Checks every domain constraint and computes the derived fields.
    /// With sets_required, additionally demands N >= 16 so the prime
    /// windows are non-degenerate.
    static Params validate(const RawParams& raw, bool sets_required = false);
};

/// C(sigma) = L / (L + 1) with L = |log(2 sigma - 1)|; decreasing in sigma,
/// tends to 1 as sigma -> 1/2+.
double c_sigma(double sigma);

/// min{1, C(sigma) (e^2 - e)(b - 1)/log b} for b in (0, 1).
double gamma_max(double sigma, double b);

/// The unique root of C(sigma)(e^2 - e) = 1 in (1/2, 1), to 1e-9.
double sigma_star();

/// The lower-bound shape, with the unknown absolute constant kept as a unit
/// placeholder and the three factors exposed separately so callers can
/// rescale c.
struct BoundRecord {
    double upsilon_shape;  // min{1, (e^2 - e) C(sigma)}
    double kappa_factor;   // kappa^{1-sigma} / sqrt(|log(2 sigma - 1)|)
    double height_factor;  // (log T)^{1-sigma} / (loglog T)^{sigma}
    double c;              // unit placeholder
    double value;          // c * upsilon_shape * kappa_factor * height_factor
};
BoundRecord theorem_bound(const Params& p);

} // namespace rzl

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "rzl/params.hpp"
#include "rzl/sets.hpp"

namespace rzl {

/// Immutable evaluation data for R(t) = sum r(m) m^{-it} over the quantized
/// support; log m ascending.
struct ResonatorData {
    std::vector<double> log_m;
    std::vector<double> r;
    double sum_f2_M = 0.0;   // admissible-support weight mass
    double sum_r = 0.0;      // R(0)
    double sum_r2 = 0.0;
    double sum_r_logm = 0.0; // Lipschitz constant of R
    std::size_t size() const { return r.size(); }
};

ResonatorData build_resonator(const SetFamily& fam);

/// The multiplicative weight: f_p on window primes, supported on square-free
/// products of them, f(1) = 1.
double f_value(std::uint64_t m, const PrimeWindows& w, double f_p);

/// R(t) by one complex exponential per term, fixed ascending-m compensated
/// summation.
std::complex<double> resonator_value(const ResonatorData& d, double t);

/// R on an equispaced grid t0 + k dt via per-term phase recurrences with
/// renormalization every 2^16 steps (drift target 1e-10).
std::vector<std::complex<double>> resonator_grid(const ResonatorData& d, double t0, double dt,
                                                 std::size_t n);

/// Size-bound check |R(t)|^2 <= 3 T^kappa sum_f2 at the samples, plus the
/// two exact inequalities the bound factors through.
struct RBoundReport {
    bool pass = false;
    double bound = 0.0;          // 3 T^kappa sum_f2
    double worst_value = 0.0;    // max |R(t)|^2 seen
    double worst_t = 0.0;
    double cs_lhs = 0.0;         // R(0)^2
    double cs_rhs = 0.0;         // |support| * sum r^2
    double overlap_lhs = 0.0;    // sum r^2
    double overlap_rhs = 0.0;    // 3 * sum f^2
    bool cs_holds = false;
    bool overlap_holds = false;
};
RBoundReport check_R_bound(const ResonatorData& d, std::span<const double> t_samples,
                           const Params& p);

} // namespace rzl

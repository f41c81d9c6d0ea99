#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rzl/numtheory.hpp"
#include "rzl/params.hpp"
#include "rzl/util.hpp"

namespace rzl {

/// One square-free product of window primes.  `mask` records which primes
/// divide it (bit i = i-th prime of the window), so exact divisibility and
/// products never touch the (possibly 128-bit) value.
struct MElement {
    u128 value = 1;
    double log_value = 0.0;
    std::uint32_t factor_count = 0;
    std::uint64_t mask = 0;
};

/// The quantized support: one representative (the minimum) per occupied
/// geometric bucket [(1+1/T)^j, (1+1/T)^{j+1}), with its coefficient.
/// Bucket labels are kept as doubles: they are exact integers whenever they
/// fit, and for very large T distinct buckets still map to distinct labels.
struct QuantizedSupport {
    std::vector<double> j_label;
    std::vector<std::size_t> elem_index; // into the source enumeration
    std::vector<double> log_m;
    std::vector<double> r;               // coefficient of the representative

    std::size_t size() const { return r.size(); }
};

/// All square-free products of primes in P with at most k_max prime factors
/// (integer count against the real threshold), ascending, 1 included.
/// Throws cap_exceeded when the element count would exceed `cap`.
std::vector<MElement> enumerate_M(const std::vector<std::int64_t>& P, double k_max,
                                  std::uint64_t cap = 10'000'000);

/// Elementary symmetric sums e_0..e_{j_max} of the weights, by the one-pass
/// recurrence with fixed accumulation order.
std::vector<double> symmetric_sums(std::span<const double> weights, std::size_t j_max);

/// Buckets the enumeration by j = floor(log m / log(1+1/T)), picks the
/// minimum per bucket and sums f(n)^2 over the three-bucket window
/// (1+1/T)^{j-1} <= n <= (1+1/T)^{j+2}.  With `literal_window` the lower
/// endpoint uses (1-1/T)^{j-1} verbatim instead.
QuantizedSupport quantize_support(std::span<const MElement> m_enum, double T, double f_p,
                                  bool literal_window = false);

/// Everything the resonator and the moments need about the sets.
struct SetFamily {
    Params params;
    PrimeWindows windows;
    std::vector<MElement> m_enum; // empty when built DP-only
    QuantizedSupport quant;
    std::vector<double> sym_sums; // e_0..e_|P| of {f_p^2}
    double sum_f2_M = 0.0;        // sum over the admissible support of f^2
    double sum_f2_L = 0.0;        // restricted to more than k_min factors
    bool enumerated = false;
    bool literal_window = false;

    double f2_of(const MElement& e) const;
};

struct SetBuildOptions {
    bool enumerate = true;
    std::uint64_t cap = 10'000'000;
    bool literal_window = false;
};

SetFamily build_set_family(const Params& p, const SetBuildOptions& opts = {});

/// Weight fraction of the discarded heavy tail (more than k_max factors):
/// (sum_{j > k_max} e_j) / prod_p (1 + f_p^2), in [0, 1).
double tail_ratio_M(const Params& p);

/// (sum over k_min < j <= k_max of e_j) / (sum over j <= k_max), in [0, 1].
/// Refuses when gamma violates the admissibility threshold for this (sigma, b).
double ratio_L_over_M(const Params& p);

struct Lemma58Report {
    double lhs;    // light-tail weight: sum_{j <= k_min} e_j
    double rhs;    // b^{-k_min} prod_p (1 + b f_p^2)
    double margin; // C(sigma)(e^2-e)(b-1) - gamma log b; negative iff admissible
    bool holds;    // lhs <= rhs
};
Lemma58Report lemma58_check(const Params& p);

} // namespace rzl

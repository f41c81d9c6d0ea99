#include "rzl/sets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rzl/errors.hpp"

namespace rzl {

namespace {

void enumerate_rec(const std::vector<std::int64_t>& P, const std::vector<double>& logs,
                   std::size_t start, int remaining, MElement cur, double log_cap,
                   std::uint64_t cap, std::vector<MElement>& out) {
    out.push_back(cur);
    if (out.size() > cap) throw cap_exceeded("enumeration exceeds cap of " + std::to_string(cap));
    if (remaining == 0) return;
    for (std::size_t i = start; i < P.size(); ++i) {
        double lg = cur.log_value + logs[i];
        if (lg > log_cap)
            throw cap_exceeded("enumerated element would exceed the 128-bit value range");
        MElement next;
        next.value = cur.value * static_cast<u128>(P[i]);
        next.log_value = lg;
        next.factor_count = cur.factor_count + 1;
        next.mask = cur.mask | (1ULL << i);
        enumerate_rec(P, logs, i + 1, remaining - 1, next, log_cap, cap, out);
    }
}

} // namespace

std::vector<MElement> enumerate_M(const std::vector<std::int64_t>& P, double k_max,
                                  std::uint64_t cap) {
    if (cap < 1) throw invalid_parameter("enumeration cap must be >= 1");
    if (P.size() > 63) throw cap_exceeded("enumeration supports at most 63 window primes");
    if (k_max < 0.0) throw invalid_parameter("k_max must be >= 0");
    int k_limit = static_cast<int>(std::min<double>(std::floor(k_max), double(P.size())));

    std::vector<double> logs(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) logs[i] = std::log(static_cast<double>(P[i]));

    std::vector<MElement> out;
    // 2^128 - 1 ~ e^{88.72}; stay clear of it.
    enumerate_rec(P, logs, 0, k_limit, MElement{}, 88.0, cap, out);
    std::sort(out.begin(), out.end(),
              [](const MElement& a, const MElement& b) { return a.value < b.value; });
    return out;
}

std::vector<double> symmetric_sums(std::span<const double> weights, std::size_t j_max) {
    if (j_max > weights.size())
        throw invalid_parameter("symmetric_sums: j_max exceeds the number of weights");
    for (double w : weights)
        if (!(w >= 0.0)) throw invalid_parameter("symmetric_sums: weights must be nonnegative");
    std::vector<double> e(j_max + 1, 0.0);
    e[0] = 1.0;
    std::size_t filled = 0;
    for (double w : weights) {
        filled = std::min(filled + 1, j_max);
        for (std::size_t j = filled; j >= 1; --j) e[j] += w * e[j - 1];
    }
    return e;
}

QuantizedSupport quantize_support(std::span<const MElement> m_enum, double T, double f_p,
                                  bool literal_window) {
    if (!(T >= 100.0)) throw invalid_parameter("quantize_support: T must be >= 100");
    const double w = std::log1p(1.0 / T);
    const double f2 = f_p * f_p;

    const std::size_t n = m_enum.size();
    std::vector<double> q(n), prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = m_enum[i].log_value / w;
        prefix[i + 1] = prefix[i] + std::pow(f2, m_enum[i].factor_count);
    }

    QuantizedSupport out;
    // f^2 window sum over q in [qlo, qhi] (inclusive).
    auto window_sum = [&](double qlo, double qhi) {
        auto lo = std::lower_bound(q.begin(), q.end(), qlo) - q.begin();
        auto hi = std::upper_bound(q.begin(), q.end(), qhi) - q.begin();
        return prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)];
    };

    for (std::size_t i = 0; i < n;) {
        double j = std::floor(q[i]);
        // representative = minimum of the bucket = first in value order
        std::size_t k = i;
        while (k < n && std::floor(q[k]) == j) ++k;

        double r2;
        if (!literal_window) {
            r2 = window_sum(j - 1.0, j + 2.0);
        } else {
            // verbatim lower endpoint (1 - 1/T)^{j-1}: log n >= (j-1) log(1-1/T)
            double lo_log = (j - 1.0) * std::log1p(-1.0 / T);
            double hi_log = (j + 2.0) * w;
            auto lo = std::lower_bound(m_enum.begin(), m_enum.end(), lo_log,
                                       [](const MElement& e, double v) { return e.log_value < v; }) -
                      m_enum.begin();
            auto hi = std::upper_bound(m_enum.begin(), m_enum.end(), hi_log,
                                       [](double v, const MElement& e) { return v < e.log_value; }) -
                      m_enum.begin();
            r2 = prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)];
        }
        out.j_label.push_back(j);
        out.elem_index.push_back(i);
        out.log_m.push_back(m_enum[i].log_value);
        out.r.push_back(std::sqrt(r2));
        i = k;
    }
    return out;
}

double SetFamily::f2_of(const MElement& e) const {
    return std::pow(params.f_p * params.f_p, e.factor_count);
}

SetFamily build_set_family(const Params& p, const SetBuildOptions& opts) {
    SetFamily fam;
    fam.params = p;
    fam.windows = prime_windows(p.N);
    if (fam.windows.degenerate())
        throw precondition_violation("middle prime window for N = " + std::to_string(p.N) +
                                     " is empty");
    fam.literal_window = opts.literal_window;

    const double w = p.f_p * p.f_p;
    std::vector<double> weights(fam.windows.p.size(), w);
    fam.sym_sums = symmetric_sums(weights, weights.size());

    auto j_hi = std::min<long>(static_cast<long>(std::floor(p.k_max)),
                               static_cast<long>(weights.size()));
    Accumulator all, heavy;
    for (long j = 0; j <= j_hi; ++j) {
        all.add(fam.sym_sums[static_cast<std::size_t>(j)]);
        // membership in the heavy part needs strictly more than k_min factors
        if (static_cast<double>(j) > p.k_min) heavy.add(fam.sym_sums[static_cast<std::size_t>(j)]);
    }
    fam.sum_f2_M = all.value();
    fam.sum_f2_L = heavy.value();

    if (opts.enumerate) {
        fam.m_enum = enumerate_M(fam.windows.p, p.k_max, opts.cap);
        fam.quant = quantize_support(fam.m_enum, p.T, p.f_p, opts.literal_window);
        fam.enumerated = true;
    }
    return fam;
}

double tail_ratio_M(const Params& p) {
    PrimeWindows w = prime_windows(p.N);
    if (w.degenerate()) throw precondition_violation("degenerate middle prime window");
    const double f2 = p.f_p * p.f_p;
    std::vector<double> weights(w.p.size(), f2);
    auto e = symmetric_sums(weights, weights.size());

    double full = 1.0;
    for (std::size_t i = 0; i < weights.size(); ++i) full *= 1.0 + f2;
    Accumulator tail;
    for (std::size_t j = 0; j < e.size(); ++j)
        if (static_cast<double>(j) > p.k_max) tail.add(e[j]);
    return tail.value() / full;
}

double ratio_L_over_M(const Params& p) {
    double gmax = gamma_max(p.sigma, p.b);
    if (!(p.gamma < gmax))
        throw precondition_violation("gamma = " + std::to_string(p.gamma) +
                                     " is not admissible for sigma = " + std::to_string(p.sigma) +
                                     ", b = " + std::to_string(p.b) +
                                     " (threshold " + std::to_string(gmax) + ")");
    PrimeWindows w = prime_windows(p.N);
    if (w.degenerate()) throw precondition_violation("degenerate middle prime window");
    const double f2 = p.f_p * p.f_p;
    std::vector<double> weights(w.p.size(), f2);
    auto e = symmetric_sums(weights, weights.size());

    Accumulator num, den;
    for (std::size_t j = 0; j < e.size(); ++j) {
        double jd = static_cast<double>(j);
        if (jd <= p.k_max) {
            den.add(e[j]);
            if (jd > p.k_min) num.add(e[j]);
        }
    }
    return num.value() / den.value();
}

Lemma58Report lemma58_check(const Params& p) {
    PrimeWindows w = prime_windows(p.N);
    if (w.degenerate()) throw precondition_violation("degenerate middle prime window");
    const double f2 = p.f_p * p.f_p;
    std::vector<double> weights(w.p.size(), f2);
    auto e = symmetric_sums(weights, weights.size());

    Lemma58Report rep{};
    Accumulator light;
    for (std::size_t j = 0; j < e.size(); ++j)
        if (static_cast<double>(j) <= p.k_min) light.add(e[j]);
    rep.lhs = light.value();

    double prod = 1.0;
    for (std::size_t i = 0; i < weights.size(); ++i) prod *= 1.0 + p.b * f2;
    rep.rhs = std::pow(p.b, -p.k_min) * prod;

    constexpr double kE2mE = 4.670774270471604;
    rep.margin = c_sigma(p.sigma) * kE2mE * (p.b - 1.0) - p.gamma * std::log(p.b);
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);
    return rep;
}

} // namespace rzl

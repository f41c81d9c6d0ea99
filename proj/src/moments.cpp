#include "rzl/moments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "rzl/convolution.hpp"
#include "rzl/errors.hpp"
#include "rzl/quadrature.hpp"
#include "rzl/util.hpp"

namespace rzl {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

double phi(double x) { return std::exp(-0.5 * x * x); }

// Gaussian triple sum over (m, v, p) with |T log(mp/v)| <= cutoff, the
// primes and per-prime weights supplied by the caller.  Exact mp = v pairs
// are recognized through the factor masks so they contribute Phi(0) = 1.
double near_diagonal_sum(const SetFamily& fam, const Params& p,
                         const std::vector<std::int64_t>& primes,
                         const std::vector<double>& prime_weight, double cutoff,
                         std::size_t* kept) {
    const auto& quant = fam.quant;
    const std::size_t n = quant.size();
    const double T = p.T;
    const double half_width = cutoff / T;

    // prime index lookup for exact-pair detection (middle window only)
    const auto& wp = fam.windows.p;

    Accumulator total;
    std::size_t kept_cnt = 0;
    for (std::size_t ip = 0; ip < primes.size(); ++ip) {
        std::int64_t q = primes[ip];
        double lq = std::log(static_cast<double>(q));
        double wq = prime_weight[ip] * std::pow(static_cast<double>(q), -p.sigma);
        if (wq == 0.0) continue;
        int bit = -1;
        auto it = std::lower_bound(wp.begin(), wp.end(), q);
        if (it != wp.end() && *it == q) bit = static_cast<int>(it - wp.begin());

        for (std::size_t im = 0; im < n; ++im) {
            double target = quant.log_m[im] + lq;
            auto lo = std::lower_bound(quant.log_m.begin(), quant.log_m.end(),
                                       target - half_width) -
                      quant.log_m.begin();
            auto hi = std::upper_bound(quant.log_m.begin(), quant.log_m.end(),
                                       target + half_width) -
                      quant.log_m.begin();
            for (auto iv = static_cast<std::size_t>(lo); iv < static_cast<std::size_t>(hi); ++iv) {
                double lambda;
                if (bit >= 0 && fam.enumerated) {
                    const MElement& em = fam.m_enum[quant.elem_index[im]];
                    const MElement& ev = fam.m_enum[quant.elem_index[iv]];
                    bool exact = ((em.mask >> bit) & 1ULL) == 0 &&
                                 ev.mask == (em.mask | (1ULL << bit));
                    lambda = exact ? 0.0 : (target - quant.log_m[iv]);
                } else {
                    lambda = target - quant.log_m[iv];
                }
                total.add(quant.r[im] * quant.r[iv] * wq * phi(T * lambda));
                ++kept_cnt;
            }
        }
    }
    if (kept) *kept = kept_cnt;
    return total.value();
}

// sum over the admissible support of f(v)^2 sum_{p | v} 1/(f(p) p^sigma);
// by enumeration when available, otherwise by the summation-swap identity
// through leave-one-out symmetric sums.
double divisor_weighted_mass(const SetFamily& fam, const Params& p) {
    const auto& P = fam.windows.p;
    std::vector<double> inv_weight(P.size());
    for (std::size_t i = 0; i < P.size(); ++i)
        inv_weight[i] = 1.0 / (p.f_p * std::pow(static_cast<double>(P[i]), p.sigma));

    if (fam.enumerated) {
        Accumulator sum;
        for (const MElement& e : fam.m_enum) {
            if (e.factor_count == 0) continue;
            double inner = 0.0;
            std::uint64_t mask = e.mask;
            while (mask) {
                int bit = std::countr_zero(mask);
                inner += inv_weight[static_cast<std::size_t>(bit)];
                mask &= mask - 1;
            }
            sum.add(fam.f2_of(e) * inner);
        }
        return sum.value();
    }

    // swap: sum_p f(p)^2 / (f(p) p^sigma) * sum_{j <= k_max - 1} e_j(weights \ p);
    // the weights are all equal, so the leave-one-out sums coincide.
    const double w = p.f_p * p.f_p;
    if (P.empty()) return 0.0;
    std::vector<double> rest(P.size() - 1, w);
    auto e1 = symmetric_sums(rest, rest.size());
    Accumulator inner1;
    for (std::size_t j = 0; j < e1.size(); ++j)
        if (static_cast<double>(j) <= p.k_max - 1.0) inner1.add(e1[j]);
    Accumulator total;
    for (std::size_t i = 0; i < P.size(); ++i) total.add(w * inv_weight[i] * inner1.value());
    return total.value();
}

} // namespace

GaussianIntegralCheck gaussian_resonance_integral(double T, double lam, double beta) {
    if (!(T > 1.0)) throw invalid_parameter("gaussian_resonance_integral: T must exceed 1");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw invalid_parameter("gaussian_resonance_integral: beta must lie in (0, 1)");
    if (!(std::abs(lam) <= 1.0))
        throw invalid_parameter("gaussian_resonance_integral: |lam| must be <= 1");

    GaussianIntegralCheck g{};
    g.closed_form = T * kSqrt2Pi / 2.0 * phi(T * lam);
    g.head_bound = std::pow(T, beta);
    g.tail_bound = 1.0 / (T * std::log(T));

    quad::Options qo;
    qo.tol_abs = 1e-10;
    qo.max_panel = std::min(T / 4.0, 2.0 * kPi / std::max(1e-3, std::abs(lam)));
    auto f = [&](double t) { return phi(t / T) * std::cos(t * lam); };
    g.quad_value = quad::integrate(f, std::pow(T, beta), T * std::log(T), qo).value;
    return g;
}

M1Result m1_estimate(const ResonatorData& d, const Params& p, MomentMode mode, double tol,
                     long cost_cap) {
    const double t_lo = std::pow(p.T, p.beta);
    const double t_hi = p.T * std::log(p.T);

    quad::Options qo;
    qo.max_panel = d.log_m.empty() || d.log_m.back() == 0.0
                       ? (t_hi - t_lo)
                       : 2.0 * kPi / d.log_m.back();
    qo.max_evals = cost_cap;
    // scale the absolute tolerance by a crude magnitude estimate
    qo.tol_abs = tol * std::max(1.0, d.sum_r2 * p.T);

    M1Result res;
    if (mode == MomentMode::quadrature) {
        auto f = [&](double t) {
            double inner = kernel_inner_mass(std::log(t) * std::log(t), p.theta, p.N);
            return inner * std::norm(resonator_value(d, t)) * phi(t / p.T);
        };
        auto r = quad::integrate(f, t_lo, t_hi, qo);
        res.value = r.value;
        res.evals = r.evals;
    } else {
        auto f = [&](double t) { return std::norm(resonator_value(d, t)) * phi(t / p.T); };
        auto r = quad::integrate(f, t_lo, t_hi, qo);
        res.value = 1.5 * kPi * r.value;
        res.evals = r.evals;
    }
    res.empirical_c2 = res.value / (p.T * d.sum_f2_M);
    return res;
}

M2MainTerm m2_main_term(const SetFamily& fam, const ResonatorData& d, const Params& p,
                        double cutoff) {
    if (!fam.enumerated)
        throw precondition_violation("m2_main_term needs an enumerated set family");

    M2MainTerm out;
    const auto& P = fam.windows.p;
    std::vector<double> unit(P.size(), 1.0);
    double core = near_diagonal_sum(fam, p, P, unit, cutoff, &out.kept_triples);
    out.value = p.T * kPi * kSqrt2Pi / 16.0 * core;

    // everything past the cutoff, bounded crudely by Phi(cutoff) (sum r)^2 sum p^{-sigma}
    double sum_ps = 0.0;
    for (std::int64_t q : P) sum_ps += std::pow(static_cast<double>(q), -p.sigma);
    out.far_term_bound =
        p.T * kPi * kSqrt2Pi / 16.0 * phi(cutoff) * d.sum_r * d.sum_r * sum_ps;

    // flanking windows carry triangle weights and coefficient pi/4
    auto window_surplus = [&](const std::vector<std::int64_t>& primes, double center_log) {
        std::vector<double> wts(primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i)
            wts[i] = std::max(0.0, 0.5 - std::abs(std::log(static_cast<double>(primes[i])) -
                                                  center_log));
        double s = near_diagonal_sum(fam, p, primes, wts, cutoff, nullptr);
        return p.T * kPi * kSqrt2Pi / 8.0 * s; // (pi/4)(sqrt(2pi)/2) T
    };
    double logA = std::log(p.log_N * p.loglog_N);
    out.surplus_minus = window_surplus(fam.windows.p_minus, 1.0 + logA);
    out.surplus_plus = window_surplus(fam.windows.p_plus, 2.0 + logA);
    return out;
}

M2Result m2_estimate(const SetFamily& fam, const ResonatorData& d, const Params& p,
                     const ZeroDatabase& db, MomentMode mode, const LogZetaGrid* grid, double tol,
                     long cost_cap) {
    M2Result out;
    M2MainTerm main = m2_main_term(fam, d, p);
    out.main_term = main.value;
    out.surplus_minus = main.surplus_minus;
    out.surplus_plus = main.surplus_plus;
    out.error_budget = (std::pow(p.T, 1.5 + p.kappa - p.sigma) * std::pow(std::log(p.T), 9.0) +
                        std::pow(p.T, p.beta + p.kappa)) *
                       fam.sum_f2_M * std::pow(p.log_N, 1.0 - p.sigma) /
                       std::pow(p.loglog_N, p.sigma);

    if (mode == MomentMode::analytic) {
        out.re_value = main.value;
        return out;
    }

    const double t_lo = std::pow(p.T, p.beta);
    const double t_hi = p.T * std::log(p.T);
    if (t_lo - std::log(t_lo) * std::log(t_lo) < 1.0)
        throw precondition_violation(
            "m2_estimate: the inner height range dips below 1; raise beta or T");
    long refusals = 0;
    double excised = 0.0;

    LhsOptions lz;
    lz.grid = grid;

    quad::Options qo;
    // two oscillations of |R|^2 per initial panel
    qo.max_panel = d.log_m.empty() || d.log_m.back() == 0.0
                       ? 1.0
                       : 4.0 * kPi / d.log_m.back();
    qo.max_evals = cost_cap;
    qo.tol_abs = tol * std::max(1.0, d.sum_r2 * p.T);

    const std::complex<double> rot(std::cos(p.theta), -std::sin(p.theta)); // e^{-i theta}
    // Indicator excision is tracked at panel resolution through the node
    // spacing each evaluation represents.
    auto f = [&](double t) {
        Indicator ind = indicator_I(p.sigma, t, db);
        if (ind.value == 0) {
            ++refusals;
            return 0.0;
        }
        const double L = std::log(t) * std::log(t);
        quad::Options qi;
        qi.tol_abs = tol * 10.0;
        double lx = std::log(p.log_N * p.loglog_N) + 2.0;
        qi.max_panel = 4.0 * kPi / lx;
        auto inner = [&](double u) -> std::complex<double> {
            std::complex<double> zv = grid && grid->covers(t + u) && grid->sigma() == p.sigma
                                          ? grid->value(t + u)
                                          : log_zeta(p.sigma, t + u, lz.zeta_tol).value;
            return zv * kernel_K(u, p.theta, p.N);
        };
        auto ri = quad::integrate_c(inner, -L, L, qi);
        double re_part = (rot * ri.value).real();
        return re_part * std::norm(resonator_value(d, t)) * phi(t / p.T);
    };
    auto r = quad::integrate(f, t_lo, t_hi, qo);
    out.re_value = r.value;
    out.evals = r.evals;
    out.indicator_refusals = refusals;

    // measured excision from the database itself
    for (const auto& [re, im] : db.offline) {
        if (re < p.sigma) continue;
        double w = std::log(std::max(im, 2.0)) * std::log(std::max(im, 2.0));
        double lo = std::max(t_lo, im - w), hi = std::min(t_hi, im + w);
        if (hi > lo) excised += hi - lo;
    }
    out.excised_measure = excised;
    return out;
}

std::pair<double, double> lemma39_lower(const SetFamily& fam, [[maybe_unused]] const ResonatorData& d,
                                        const Params& p, long cost_cap) {
    if (!fam.enumerated)
        throw precondition_violation("lemma39_lower needs an enumerated set family");
    const auto& quant = fam.quant;
    const auto& P = fam.windows.p;
    auto cost = static_cast<long>(quant.size()) * static_cast<long>(quant.size()) *
                static_cast<long>(P.size());
    if (cost > cost_cap) throw cap_exceeded("lemma39_lower: full triple sum too large");

    // full triple sum; Phi underflows to zero far from the diagonal
    Accumulator lhs;
    for (std::int64_t q : P) {
        double lq = std::log(static_cast<double>(q));
        double wq = std::pow(static_cast<double>(q), -p.sigma);
        int bit = -1;
        auto it = std::lower_bound(P.begin(), P.end(), q);
        bit = static_cast<int>(it - P.begin());
        for (std::size_t im = 0; im < quant.size(); ++im) {
            const MElement& em = fam.m_enum[quant.elem_index[im]];
            for (std::size_t iv = 0; iv < quant.size(); ++iv) {
                const MElement& ev = fam.m_enum[quant.elem_index[iv]];
                bool exact = ((em.mask >> bit) & 1ULL) == 0 &&
                             ev.mask == (em.mask | (1ULL << bit));
                double lambda = exact ? 0.0 : (quant.log_m[im] + lq - quant.log_m[iv]);
                double ph = phi(p.T * lambda);
                if (ph > 0.0) lhs.add(quant.r[im] * quant.r[iv] * wq * ph);
            }
        }
    }
    double rhs = divisor_weighted_mass(fam, p);
    return {lhs.value(), rhs};
}

std::pair<double, double> lemma312_lower(const SetFamily& fam, const Params& p) {
    double lhs = divisor_weighted_mass(fam, p);
    double rhs = p.gamma * fam.sum_f2_L * std::exp(-2.0 * p.sigma) /
                 std::sqrt(p.abs_log_2s1) * std::pow(p.log_N, 1.0 - p.sigma) /
                 std::pow(p.loglog_N, p.sigma);
    return {lhs, rhs};
}

MomentReport resonance_ratio(const SetFamily& fam, const ResonatorData& d, const Params& p,
                             const ZeroDatabase& db, MomentMode m1_mode, MomentMode m2_mode,
                             const LogZetaGrid* grid, double tol) {
    MomentReport rep;
    rep.m1_mode = m1_mode;
    rep.m2_mode = m2_mode;

    M1Result m1 = m1_estimate(d, p, m1_mode, tol);
    rep.M1 = m1.value;
    rep.empirical_c2 = m1.empirical_c2;

    M2Result m2 = m2_estimate(fam, d, p, db, m2_mode, grid, tol);
    rep.M2_re = m2.re_value;
    rep.M2_main = m2.main_term;
    rep.M2_error_budget = m2.error_budget;
    rep.surplus_minus = m2.surplus_minus;
    rep.surplus_plus = m2.surplus_plus;
    rep.excised_measure = m2.excised_measure;
    rep.indicator_refusals = m2.indicator_refusals;

    auto l39 = lemma39_lower(fam, d, p);
    rep.lemma39_lhs = l39.first;
    rep.lemma39_rhs = l39.second;
    auto l312 = lemma312_lower(fam, p);
    rep.lemma312_lhs = l312.first;
    rep.lemma312_rhs = l312.second;

    rep.ratio = rep.M2_re / rep.M1;
    double denom = p.gamma * p.T * fam.sum_f2_L * std::pow(p.log_N, 1.0 - p.sigma) /
                   (std::pow(p.loglog_N, p.sigma) * std::sqrt(p.abs_log_2s1));
    rep.empirical_c1 = denom != 0.0 ? rep.M2_main / denom : 0.0;
    return rep;
}

} // namespace rzl

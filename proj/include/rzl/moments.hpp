#pragma once

#include <complex>
#include <optional>

#include "rzl/params.hpp"
#include "rzl/resonator.hpp"
#include "rzl/sets.hpp"
#include "rzl/zeta.hpp"

namespace rzl {

/// The truncated Gaussian-window integral against one oscillation, with the
/// closed form and the head/tail discard bounds.
struct GaussianIntegralCheck {
    double closed_form;  // T sqrt(2 pi)/2 * Phi(T lam)
    double quad_value;   // Re int_{T^beta}^{T log T} Phi(t/T) e^{-it lam} dt
    double head_bound;   // T^beta
    double tail_bound;   // 1/(T log T)
};
GaussianIntegralCheck gaussian_resonance_integral(double T, double lam, double beta);

enum class MomentMode { quadrature, analytic };

struct M1Result {
    double value = 0.0;
    double empirical_c2 = 0.0; // value / (T sum_f2)
    long evals = 0;
};

/// Denominator moment over [T^beta, T log T].  Quadrature mode uses the
/// exact inner kernel mass; analytic mode replaces it by the full-line
/// value 3 pi / 2 (an upper bound, since K >= 0).
M1Result m1_estimate(const ResonatorData& d, const Params& p, MomentMode mode,
                     double tol = 1e-8, long cost_cap = 200'000'000);

/// Near-diagonal Gaussian triple sum
///   T (pi sqrt(2 pi)/16) sum_{m,v in support} sum_{p in P}
///     r(m) r(v) p^{-sigma} Phi(T log(mp/v)),
/// restricted to |T log(mp/v)| <= cutoff; plus the analogous nonnegative
/// window sums over the flanking prime sets, which the main term discards.
struct M2MainTerm {
    double value = 0.0;
    double far_term_bound = 0.0; // bound on what the cutoff discarded
    double surplus_minus = 0.0;  // flanking window contribution (lower)
    double surplus_plus = 0.0;   // flanking window contribution (upper)
    std::size_t kept_triples = 0;
};
M2MainTerm m2_main_term(const SetFamily& fam, const ResonatorData& d, const Params& p,
                        double cutoff = 12.0);

struct M2Result {
    double re_value = 0.0;      // Re M2 (quadrature mode) or the main term (analytic)
    double main_term = 0.0;
    double error_budget = 0.0;  // (T^{3/2+kappa-sigma}(log T)^9 + T^{beta+kappa}) scale
    double surplus_minus = 0.0;
    double surplus_plus = 0.0;
    double excised_measure = 0.0; // measure of t-range dropped by the indicator
    long indicator_refusals = 0;
    long evals = 0;
};

/// Numerator moment.  Quadrature mode computes the double integral with
/// branch-tracked log zeta and the zero-free gate; analytic mode returns
/// the near-diagonal main term with the error budget.
M2Result m2_estimate(const SetFamily& fam, const ResonatorData& d, const Params& p,
                     const ZeroDatabase& db, MomentMode mode, const LogZetaGrid* grid = nullptr,
                     double tol = 1e-6, long cost_cap = 400'000'000);

/// Exact lower-bound chain on the main term: the Gaussian triple sum
/// dominates the divisor-weighted support mass.
std::pair<double, double> lemma39_lower(const SetFamily& fam, const ResonatorData& d,
                                        const Params& p, long cost_cap = 200'000'000);

/// Divisor-weighted support mass against its closed lower bound
/// gamma * sum_L f^2 * e^{-2 sigma} (log N)^{1-sigma} /
/// (sqrt(|log(2s-1)|) (loglog N)^sigma).
std::pair<double, double> lemma312_lower(const SetFamily& fam, const Params& p);

/// Aggregated two-moment report.
struct MomentReport {
    double M1 = 0.0;
    double M2_re = 0.0;
    double M2_main = 0.0;
    double M2_error_budget = 0.0;
    double lemma39_lhs = 0.0, lemma39_rhs = 0.0;
    double lemma312_lhs = 0.0, lemma312_rhs = 0.0;
    double ratio = 0.0;          // Re M2 / M1
    double empirical_c1 = 0.0;
    double empirical_c2 = 0.0;
    double surplus_minus = 0.0, surplus_plus = 0.0;
    double excised_measure = 0.0;
    long indicator_refusals = 0;
    MomentMode m1_mode = MomentMode::quadrature;
    MomentMode m2_mode = MomentMode::quadrature;
};

MomentReport resonance_ratio(const SetFamily& fam, const ResonatorData& d, const Params& p,
                             const ZeroDatabase& db, MomentMode m1_mode, MomentMode m2_mode,
                             const LogZetaGrid* grid = nullptr, double tol = 1e-6);

} // namespace rzl

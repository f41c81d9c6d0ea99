#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rzl/convolution.hpp"
#include "rzl/errors.hpp"
#include "rzl/moments.hpp"
#include "rzl/quadrature.hpp"

using namespace rzl;

namespace {

constexpr double kPi = std::numbers::pi;

Params tiny_pipeline_params(double theta = 0.0) {
    RawParams raw;
    raw.sigma = 0.8;
    raw.beta = 0.36;
    raw.kappa = 0.25;
    raw.theta = theta;
    raw.T = 1000.0;
    raw.a = 1.5;
    raw.gamma = 0.5;
    raw.b = 0.9;
    raw.N_override = 16;
    return Params::validate(raw, true);
}

// a hand-assembled family over an arbitrary prime set, for property tests
SetFamily synthetic_family(const std::vector<std::int64_t>& P, double sigma, double T,
                           double k_max, double gamma = 0.5) {
    RawParams raw;
    raw.sigma = sigma;
    raw.beta = 0.3;
    raw.kappa = 0.4 * std::min(sigma - 0.5, 0.7);
    raw.T = T;
    raw.gamma = gamma;
    raw.N_override = 16; // windows below are replaced wholesale
    SetFamily fam;
    fam.params = Params::validate(raw, true);
    fam.params.k_max = k_max;
    fam.params.k_min = gamma * k_max / 1.5;
    fam.windows.p = P;
    fam.windows.n_source = 16;
    fam.m_enum = enumerate_M(P, k_max, 2'000'000);
    fam.quant = quantize_support(fam.m_enum, T, fam.params.f_p);
    std::vector<double> w(P.size(), fam.params.f_p * fam.params.f_p);
    fam.sym_sums = symmetric_sums(w, P.size());
    fam.sum_f2_M = 0.0;
    fam.sum_f2_L = 0.0;
    for (std::size_t j = 0; j < fam.sym_sums.size(); ++j) {
        if (static_cast<double>(j) <= fam.params.k_max) {
            fam.sum_f2_M += fam.sym_sums[j];
            if (static_cast<double>(j) > fam.params.k_min) fam.sum_f2_L += fam.sym_sums[j];
        }
    }
    fam.enumerated = true;
    return fam;
}

} // namespace

TEST_SUITE("moments") {

TEST_CASE("gaussian window integral against the closed form") {
    // lam = 0 over the full half line
    auto g0 = gaussian_resonance_integral(200.0, 0.0, 0.3);
    CHECK(g0.closed_form ==
          doctest::Approx(200.0 * std::sqrt(2.0 * kPi) / 2.0).epsilon(1e-12));
    CHECK(std::abs(g0.quad_value - g0.closed_form) <= g0.head_bound + g0.tail_bound);

    for (double lam : {0.0, 0.01, 0.1}) {
        auto g = gaussian_resonance_integral(50.0, lam, 0.3);
        CHECK(std::abs(g.quad_value - g.closed_form) <= g.head_bound + g.tail_bound);
    }

    // strong decay once T lam is large
    auto gd = gaussian_resonance_integral(1000.0, 10.0 / 1000.0 * 5.0, 0.3);
    CHECK(gd.closed_form < 1000.0 * std::sqrt(2.0 * kPi) / 2.0 * std::exp(-12.0));
}

TEST_CASE("inner kernel mass never exceeds the full-line value") {
    for (double t : {15.0, 100.0, 5000.0}) {
        double L = std::log(t) * std::log(t);
        for (double theta : {0.0, 1.2, kPi}) {
            double inner = kernel_inner_mass(L, theta, 1000);
            CHECK(inner <= 1.5 * kPi * (1.0 + 1e-9));
            CHECK(inner >= 0.0);
        }
    }
}

TEST_CASE("unit-support denominator matches a bare two-factor quadrature") {
    Params p = tiny_pipeline_params();
    ResonatorData d;
    d.log_m = {0.0};
    d.r = {1.0};
    d.sum_f2_M = 1.0;
    d.sum_r = 1.0;
    d.sum_r2 = 1.0;

    auto m1 = m1_estimate(d, p, MomentMode::quadrature, 1e-9);
    // oracle: nested adaptive quadrature with a direct inner kernel integral
    auto outer = quad::integrate(
        [&](double t) {
            double L = std::log(t) * std::log(t);
            auto inner = quad::integrate([&](double u) { return kernel_K(u, p.theta, p.N); },
                                         -L, L, {.tol_abs = 1e-10, .max_panel = 1.0});
            return inner.value * oracle::gaussian(t / p.T);
        },
        std::pow(p.T, p.beta), p.T * std::log(p.T), {.tol_abs = 1e-9, .max_panel = 20.0});
    CHECK(m1.value == doctest::Approx(outer.value).epsilon(1e-6));

    // the bound mode dominates: it replaces the inner mass by 3 pi / 2
    auto m1b = m1_estimate(d, p, MomentMode::analytic);
    CHECK(m1b.value >= m1.value);
    CHECK(m1.empirical_c2 == doctest::Approx(m1.value / (p.T * 1.0)).epsilon(1e-12));
}

TEST_CASE("main term reduces to the divisor loop at huge T") {
    RawParams raw;
    raw.sigma = 0.8;
    raw.beta = 0.36;
    raw.kappa = 0.25;
    raw.T = 1e10; // only exact pairs survive the Gaussian
    raw.a = 1.5;
    raw.gamma = 0.5;
    raw.b = 0.9;
    raw.N_override = 16;
    Params p = Params::validate(raw, true);
    SetFamily fam = build_set_family(p);
    ResonatorData d = build_resonator(fam);

    auto main = m2_main_term(fam, d, p);

    // oracle: direct divisor loop over exact pairs mp = v, r = f here
    double loop = 0.0;
    for (const auto& ev : fam.m_enum) {
        for (std::size_t ip = 0; ip < fam.windows.p.size(); ++ip) {
            std::uint64_t bit = 1ULL << ip;
            if (!(ev.mask & bit)) continue;
            std::uint64_t mmask = ev.mask & ~bit;
            double fm = std::pow(p.f_p, std::popcount(mmask));
            double fv = std::pow(p.f_p, ev.factor_count);
            loop += fm * fv *
                    std::pow(static_cast<double>(fam.windows.p[ip]), -p.sigma);
        }
    }
    double expect = p.T * kPi * std::sqrt(2.0 * kPi) / 16.0 * loop;
    CHECK(main.value == doctest::Approx(expect).epsilon(1e-12));
    CHECK(main.far_term_bound < 1e-20 * main.value);

    SUBCASE("cutoff robustness") {
        auto wider = m2_main_term(fam, d, p, 16.0);
        CHECK(wider.value == doctest::Approx(main.value).epsilon(1e-9));
    }
}

TEST_CASE("main term vanishes on the unit-only support") {
    Params p = tiny_pipeline_params();
    SetFamily fam = build_set_family(p);
    fam.m_enum = enumerate_M(fam.windows.p, 0.5, 100); // just {1}
    fam.quant = quantize_support(fam.m_enum, p.T, p.f_p);
    ResonatorData d = build_resonator(fam);
    auto main = m2_main_term(fam, d, p);
    CHECK(main.value == 0.0);
}

TEST_CASE("triple-sum lower bound on random small instances") {
    std::mt19937_64 rng(20250808);
    auto pool = sieve_primes(2.0, 500.0);
    std::uniform_int_distribution<std::size_t> nprimes(1, 6);
    std::uniform_real_distribution<double> kms(0.6, 3.99), sigmas(0.52, 0.95),
        Ts(100.0, 10000.0);

    for (int inst = 0; inst < 20; ++inst) {
        std::vector<std::int64_t> P;
        std::size_t np = nprimes(rng);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        while (P.size() < np) {
            std::int64_t q = pool[pick(rng)];
            if (std::find(P.begin(), P.end(), q) == P.end()) P.push_back(q);
        }
        std::sort(P.begin(), P.end());
        double sigma = sigmas(rng), T = Ts(rng), k_max = kms(rng);
        SetFamily fam = synthetic_family(P, sigma, T, k_max);
        ResonatorData d = build_resonator(fam);

        auto [lhs, rhs] = lemma39_lower(fam, d, fam.params);
        CHECK(lhs >= rhs * (1.0 - 1e-10));

        // exhaustive-loop oracle for both sides
        double lhs_o = 0.0;
        for (std::size_t im = 0; im < fam.quant.size(); ++im)
            for (std::size_t iv = 0; iv < fam.quant.size(); ++iv)
                for (std::int64_t q : P) {
                    const auto& em = fam.m_enum[fam.quant.elem_index[im]];
                    const auto& ev = fam.m_enum[fam.quant.elem_index[iv]];
                    bool exact = ev.value == em.value * static_cast<u128>(q);
                    double lambda = exact ? 0.0
                                          : fam.quant.log_m[im] +
                                                std::log(static_cast<double>(q)) -
                                                fam.quant.log_m[iv];
                    lhs_o += fam.quant.r[im] * fam.quant.r[iv] *
                             std::pow(static_cast<double>(q), -sigma) *
                             oracle::gaussian(T * lambda);
                }
        double rhs_o = 0.0;
        for (const auto& ev : fam.m_enum) {
            double inner = 0.0;
            for (std::size_t ip = 0; ip < P.size(); ++ip)
                if (ev.mask & (1ULL << ip))
                    inner += 1.0 / (fam.params.f_p *
                                    std::pow(static_cast<double>(P[ip]), sigma));
            rhs_o += std::pow(fam.params.f_p * fam.params.f_p, ev.factor_count) * inner;
        }
        CHECK(lhs == doctest::Approx(lhs_o).epsilon(1e-10));
        CHECK(rhs == doctest::Approx(rhs_o).epsilon(1e-10));
    }
}

TEST_CASE("triple-sum bound trivial cases and the swap identity") {
    // unit support: both sides vanish
    SetFamily fam = synthetic_family({11, 13}, 0.8, 1000.0, 0.5);
    ResonatorData d = build_resonator(fam);
    auto [lhs, rhs] = lemma39_lower(fam, d, fam.params);
    CHECK(rhs == 0.0);
    CHECK(lhs >= 0.0);

    // Fubini: sum_p (f_p p^sigma)^{-1} sum_{v: p | v} f(v)^2 equals the rhs
    SetFamily fam2 = synthetic_family({11, 13, 17}, 0.7, 1000.0, 2.0);
    ResonatorData d2 = build_resonator(fam2);
    auto [l2, r2] = lemma39_lower(fam2, d2, fam2.params);
    double swap = 0.0;
    for (std::size_t ip = 0; ip < fam2.windows.p.size(); ++ip) {
        double mass = 0.0;
        for (const auto& e : fam2.m_enum)
            if (e.mask & (1ULL << ip)) mass += fam2.f2_of(e);
        swap += mass / (fam2.params.f_p *
                        std::pow(static_cast<double>(fam2.windows.p[ip]), fam2.params.sigma));
    }
    CHECK(r2 == doctest::Approx(swap).epsilon(1e-12));
    CHECK(l2 >= r2 * (1.0 - 1e-12));
}

TEST_CASE("divisor-mass lower bound across instances") {
    // the two chain steps: per-element factor count exceeds k_min on the
    // heavy part, and the smallest inverse weight has the window-scale bound
    for (double sigma : {0.6, 0.75}) {
        RawParams raw;
        raw.sigma = sigma;
        raw.beta = 0.3;
        raw.kappa = 0.04;
        raw.T = 1e9;
        raw.a = 1.5;
        raw.gamma = 0.5;
        raw.b = 0.9;
        raw.N_override = 1000;
        Params p = Params::validate(raw, true);
        SetFamily fam = build_set_family(p);
        auto [lhs, rhs] = lemma312_lower(fam, p);
        CHECK(lhs >= rhs);

        // DP swap path agrees with enumeration
        SetFamily dp = fam;
        dp.enumerated = false;
        dp.m_enum.clear();
        auto [lhs_dp, rhs_dp] = lemma312_lower(dp, p);
        CHECK(lhs_dp == doctest::Approx(lhs).epsilon(1e-11));
        CHECK(rhs_dp == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("divisor-mass bound on random property instances") {
    std::mt19937_64 rng(777001);
    auto pool = sieve_primes(5.0, 300.0);
    std::uniform_int_distribution<std::size_t> nprimes(1, 8);
    std::uniform_real_distribution<double> sigmas(0.52, 0.95), gammas(0.05, 0.95),
        kms(0.6, 4.0);
    for (int inst = 0; inst < 30; ++inst) {
        std::vector<std::int64_t> P;
        std::size_t np = nprimes(rng);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        while (P.size() < np) {
            std::int64_t q = pool[pick(rng)];
            if (std::find(P.begin(), P.end(), q) == P.end()) P.push_back(q);
        }
        std::sort(P.begin(), P.end());
        double k_max = kms(rng);
        SetFamily fam = synthetic_family(P, sigmas(rng), 1000.0, k_max, gammas(rng));
        // the closed bound needs the window-scale inequality, so tie the
        // prime set to a real window here: use max p as the scale proxy
        auto [lhs, rhs] = lemma312_lower(fam, fam.params);
        // with synthetic windows only the exact chain steps are asserted:
        double kmin = fam.params.k_min;
        double minw = 1e300;
        for (std::int64_t q : P)
            minw = std::min(minw,
                            1.0 / (fam.params.f_p * std::pow(static_cast<double>(q),
                                                             fam.params.sigma)));
        double heavy = 0.0;
        for (const auto& e : fam.m_enum)
            if (static_cast<double>(e.factor_count) > kmin) heavy += fam.f2_of(e);
        CHECK(lhs >= heavy * kmin * minw * (1.0 - 1e-12));
        (void)rhs;
    }
}

TEST_CASE("numerator quadrature stays within reach of the main term") {
    Params p = tiny_pipeline_params();
    SetFamily fam = build_set_family(p);
    ResonatorData d = build_resonator(fam);
    ZeroDatabase db = ZeroDatabase::parse("verified_height 5.45e8\n14.134725\n");

    double t_lo = std::pow(p.T, p.beta);
    double t_hi = p.T * std::log(p.T);
    double pad_lo = std::log(t_lo) * std::log(t_lo);
    double pad_hi = std::log(t_hi) * std::log(t_hi);
    LogZetaGrid grid(p.sigma, std::max(1.0, t_lo - pad_lo - 1.0), t_hi + pad_hi + 1.0, 0.05,
                     1e-9, 2);

    auto m2q = m2_estimate(fam, d, p, db, MomentMode::quadrature, &grid, 1e-5);
    auto m2a = m2_estimate(fam, d, p, db, MomentMode::analytic);
    CHECK(m2a.re_value == doctest::Approx(m2q.main_term));
    CHECK(std::abs(m2q.re_value - m2q.main_term) <= m2q.error_budget);
    CHECK(m2q.indicator_refusals == 0);
    CHECK(m2q.excised_measure == 0.0);
    CHECK(m2q.surplus_minus >= 0.0);
    CHECK(m2q.surplus_plus >= 0.0);
}

} // TEST_SUITE

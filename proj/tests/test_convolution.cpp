#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rzl/convolution.hpp"
#include "rzl/errors.hpp"
#include "rzl/numtheory.hpp"
#include "rzl/quadrature.hpp"

using namespace rzl;

namespace {
constexpr double kPi = std::numbers::pi;

ZeroDatabase certified_db() {
    return ZeroDatabase::parse("verified_height 5.45e8\n14.134725\n21.022040\n25.010858\n");
}
} // namespace

TEST_SUITE("convolution") {

TEST_CASE("kernel at zero and nonnegativity") {
    for (double theta : {0.0, 1.0, kPi, 4.5}) {
        CHECK(kernel_K(0.0, theta, 1000) ==
              doctest::Approx(0.75 * (1.0 + std::cos(theta))).epsilon(1e-12));
    }
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> us(-200.0, 200.0), ths(-10.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
        CHECK(kernel_K(us(rng), ths(rng), 1000) >= 0.0);
    }
}

TEST_CASE("kernel mass equals the full-line value") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ths(0.0, 2.0 * kPi);
    std::uniform_int_distribution<std::int64_t> ns(16, 2000000);
    for (int i = 0; i < 5; ++i) {
        double mass = kernel_mass_quadrature(ths(rng), ns(rng), 2e4, 1e-9);
        CHECK(mass == doctest::Approx(1.5 * kPi).epsilon(1e-6 / (1.5 * kPi)));
    }
    // the Si-based closed form agrees on truncated ranges
    for (double L : {10.0, 48.0}) {
        auto direct = quad::integrate([&](double u) { return kernel_K(u, 0.7, 1000); }, -L, L,
                                      {.tol_abs = 1e-11, .max_panel = 0.8});
        CHECK(kernel_inner_mass(L, 0.7, 1000) == doctest::Approx(direct.value).epsilon(1e-8));
    }
}

TEST_CASE("triangle weight") {
    CHECK(fejer_weight(0.5, std::log(100.0), 100) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fejer_weight(0.5, 0.0, 2) == 0.0);  // |log 2| > 1/2
    CHECK(fejer_weight(0.5, 0.0, 1) == doctest::Approx(0.5));
    CHECK(fejer_weight(1.0, 2.0, 12) == doctest::Approx(1.0 - std::abs(2.0 - std::log(12.0))));
    CHECK_THROWS_AS((void)fejer_weight(0.0, 0.0, 1), invalid_parameter);
}

TEST_CASE("prime-sum side vanishes when the window holds only n = 1") {
    CHECK(std::abs(conv_rhs(0.8, 1000.0, 0.5, 0.0)) == 0.0);
}

TEST_CASE("prime-sum side against a direct loop") {
    double sigma = 0.8, t = 1000.0, psi = 0.5, H = std::log(100.0);
    auto fast = conv_rhs(sigma, t, psi, H);
    // brute force over the whole window with library-independent arithmetic
    std::complex<double> slow(0.0, 0.0);
    for (std::int64_t n = 2; n <= 200; ++n) {
        std::int64_t base;
        int k;
        double lam = 0.0;
        if (prime_power_base(n, base, k)) lam = std::log(static_cast<double>(base));
        if (lam == 0.0) continue;
        double w = std::max(0.0, psi - std::abs(H - std::log(static_cast<double>(n))));
        if (w == 0.0) continue;
        double ln = std::log(static_cast<double>(n));
        std::complex<double> nst = std::exp(std::complex<double>(-sigma * ln, -t * ln));
        slow += lam * w / ln * nst;
    }
    CHECK(std::abs(fast - slow) < 1e-13);
    CHECK(std::abs(fast) > 0.0);
}

TEST_CASE("window additivity of the weight system") {
    // the width-1 triangle splits into two shifted half-width triangles
    // plus two copies of the centered one, pointwise in log n
    double sigma = 0.7, t = 500.0, H = std::log(50.0);
    auto wide = conv_rhs(sigma, t, 1.0, H);
    auto left = conv_rhs(sigma, t, 0.5, H - 0.5);
    auto mid = conv_rhs(sigma, t, 0.5, H);
    auto right = conv_rhs(sigma, t, 0.5, H + 0.5);
    CHECK(std::abs(wide - (left + right + 2.0 * mid)) < 1e-13);
}

TEST_CASE("budget formula value") {
    double budget = std::exp(1.0) / std::pow(std::log(1000.0), 2.0);
    auto db = certified_db();
    LhsOptions lo;
    lo.tol = 1e-6;
    LogZetaGrid grid(0.8, 940.0, 1060.0, 0.02, 1e-10, 2);
    lo.grid = &grid;
    auto rep = verify_convolution(0.8, 1000.0, 0.5, 0.0, db, lo);
    CHECK(rep.budget == doctest::Approx(budget).epsilon(1e-12));
    CHECK(rep.budget == doctest::Approx(std::exp(1.0) / 47.71708268).epsilon(1e-9));
}

TEST_CASE("left side scales like psi^2 for narrow kernels") {
    // the quadratic limit needs psi (log t)^2 << 1, i.e. psi well below
    // 1/48 at this height
    double sigma = 0.8, t = 1000.0;
    LogZetaGrid grid(sigma, 940.0, 1060.0, 0.02, 1e-10, 2);
    LhsOptions lo;
    lo.grid = &grid;
    lo.tol = 1e-12;
    auto [v1, e1] = conv_lhs(sigma, t, 0.002, 0.0, lo);
    auto [v2, e2] = conv_lhs(sigma, t, 0.001, 0.0, lo);
    CHECK(std::abs(v1) / std::abs(v2) == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("tightening the tolerance does not move the value") {
    double sigma = 0.8, t = 1000.0;
    LogZetaGrid grid(sigma, 940.0, 1060.0, 0.02, 1e-10, 2);
    LhsOptions coarse, fine;
    coarse.grid = fine.grid = &grid;
    coarse.tol = 1e-6;
    fine.tol = 1e-9;
    auto [vc, ec] = conv_lhs(sigma, t, 0.5, 1.0, coarse);
    auto [vf, ef] = conv_lhs(sigma, t, 0.5, 1.0, fine);
    CHECK(std::abs(vc - vf) <= coarse.tol);
    CHECK(ef <= fine.tol);
}

TEST_CASE("full report on the reference instance") {
    auto db = certified_db();
    LogZetaGrid grid(0.8, 940.0, 1060.0, 0.02, 1e-10, 2);
    LhsOptions lo;
    lo.grid = &grid;
    auto rep = verify_convolution(0.8, 1000.0, 0.5, 0.0, db, lo);
    CHECK(rep.residual <= 10.0 * rep.budget);
    CHECK_FALSE(rep.indicator_heuristic);
}

TEST_CASE("gate refusal with a synthetic off-line zero") {
    ZeroDatabase bad = ZeroDatabase::parse("verified_height 1e6\n0.9 1000.0\n");
    CHECK_THROWS_AS((void)verify_convolution(0.8, 1000.0, 0.5, 0.0, bad, {}),
                    precondition_violation);
}

TEST_CASE("combined form equals the weighted sum of three shifts") {
    double sigma = 0.8, t = 1000.0, x = 13.35, theta = 0.9;
    LogZetaGrid grid(sigma, 940.0, 1060.0, 0.02, 1e-10, 2);
    LhsOptions lo;
    lo.grid = &grid;
    lo.tol = 1e-10;
    auto [combined, ce] = conv_combined_lhs(sigma, t, x, theta, lo);
    auto [l1, e1] = conv_lhs(sigma, t, 0.5, -std::log(x), lo);
    auto [l2, e2] = conv_lhs(sigma, t, 0.5, 0.0, lo);
    auto [l3, e3] = conv_lhs(sigma, t, 0.5, std::log(x), lo);
    std::complex<double> rot(std::cos(theta), std::sin(theta));
    std::complex<double> sum = 0.5 / rot * l1 + l2 + 0.5 * rot * l3;
    CHECK(std::abs(combined - sum) < 1e-7);
}

TEST_CASE("combined report and periodicity") {
    auto db = certified_db();
    double sigma = 0.8, t = 1000.0, x = 13.35;
    LogZetaGrid grid(sigma, 940.0, 1060.0, 0.02, 1e-10, 2);
    LhsOptions lo;
    lo.grid = &grid;
    auto a = conv_combined(sigma, t, x, 0.4, db, lo);
    auto b = conv_combined(sigma, t, x, 0.4 + 2.0 * kPi, db, lo);
    CHECK(a.lhs.real() == doctest::Approx(b.lhs.real()).epsilon(1e-9));
    CHECK(a.rhs.real() == doctest::Approx(b.rhs.real()).epsilon(1e-12));
    CHECK(a.budget == doctest::Approx(x / std::pow(std::log(t), 2.0)).epsilon(1e-12));

    CHECK_THROWS_AS((void)conv_combined(sigma, t, 1.0, 0.0, db, lo), invalid_parameter);
    CHECK_THROWS_AS((void)conv_combined(sigma, t, 100.0, 0.0, db, lo), invalid_parameter);
}

} // TEST_SUITE

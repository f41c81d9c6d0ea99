#include "rzl/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rzl/errors.hpp"
#include "rzl/numtheory.hpp"
#include "rzl/util.hpp"

namespace rzl {

namespace {

using cld = std::complex<long double>;

constexpr long double kPi = std::numbers::pi_v<long double>;

// B_{2k} / (2k)!, k = 1..24.
constexpr long double kBernoulliFactorial[24] = {
    0.0833333333333333333333333L,    -0.00138888888888888888888889L,
    0.0000330687830687830687830688L, -0.00000082671957671957671957672L,
    2.08767569878680989792101e-8L,   -5.28419013868749318484768e-10L,
    1.3382536530684678832827e-11L,   -3.3896802963225828668302e-13L,
    8.58606205627784456413591e-15L,  -2.17486869855806187304152e-16L,
    5.50900282836022951520265e-18L,  -1.39544646858125233407077e-19L,
    3.53470703962946747169323e-21L,  -8.95351742703754685040261e-23L,
    2.26795245233768306031095e-24L,  -5.74479066887220244526388e-26L,
    1.45517247561486490186626e-27L,  -3.68599494066531017818178e-29L,
    9.33673425709504467203256e-31L,  -2.36502241570062993455964e-32L,
    5.99067176248213430465991e-34L,  -1.51745488446829026171081e-35L,
    3.84375812545418823222945e-37L,  -9.73635307264669103526762e-39L};

cld pow_int_cld(long double base_log, const cld& minus_s) {
    // exp(minus_s * base_log)
    long double re = minus_s.real() * base_log;
    long double im = minus_s.imag() * base_log;
    long double mag = std::exp(re);
    return {mag * std::cos(im), mag * std::sin(im)};
}

EmResult zeta_em_core(double sigma, double t, double tol) {
    // t >= 0 here; negative heights handled by conjugation in the wrapper.
    const cld s(static_cast<long double>(sigma), static_cast<long double>(t));
    const cld minus_s = -s;

    const int M = std::max(32, static_cast<int>(std::ceil(0.63 * t)) + 16);

    long double sum_re = 0.0L, sum_im = 0.0L, abs_sum = 0.0L;
    for (int n = 1; n < M; ++n) {
        long double ln = std::log(static_cast<long double>(n));
        cld term = pow_int_cld(ln, minus_s);
        sum_re += term.real();
        sum_im += term.imag();
        abs_sum += std::abs(term.real()) + std::abs(term.imag());
    }
    cld total(sum_re, sum_im);

    const long double logM = std::log(static_cast<long double>(M));
    const cld M_minus_s = pow_int_cld(logM, minus_s); // M^{-s}
    const long double Mld = static_cast<long double>(M);

    total += M_minus_s * Mld / (s - cld(1.0L, 0.0L)); // M^{1-s}/(s-1)
    total += M_minus_s * 0.5L;

    // Correction terms T_k = [B_{2k}/(2k)!] (s)(s+1)...(s+2k-2) M^{-s-2k+1}.
    cld poch = s;                       // (s)(s+1)...(s+2k-2), k = 1 term
    cld mpow = M_minus_s * Mld;         // M^{-s+1-2k} running, k = 0 state
    const long double inv_M2 = 1.0L / (Mld * Mld);
    long double last = 0.0L;
    bool converged = false;
    int k = 0;
    for (k = 1; k <= 24; ++k) {
        mpow *= inv_M2;
        cld term = kBernoulliFactorial[k - 1] * poch * mpow;
        total += term;
        last = std::hypot(term.real(), term.imag());
        if (last < 0.1L * static_cast<long double>(tol)) {
            converged = true;
            break;
        }
        poch *= (s + cld(2.0L * k - 1.0L, 0.0L)) * (s + cld(2.0L * k, 0.0L));
    }
    if (!converged)
        throw accuracy_error("zeta_em: correction series stalled at " + std::to_string((double)last) +
                             " for t = " + std::to_string(t) + "; raise tol");

    // Rounding/phase noise: sincos argument error ~ |t| log M * eps plus
    // accumulation noise ~ eps per term.
    double noise = static_cast<double>(abs_sum) * (4e-19 + t * static_cast<double>(logM) * 6e-20);
    EmResult r;
    r.value = {static_cast<double>(total.real()), static_cast<double>(total.imag())};
    r.err = 2.0 * static_cast<double>(last) + noise + 1e-17;
    r.terms = M;
    return r;
}

} // namespace

EmResult zeta_em(double sigma, double t, double tol) {
    if (!(sigma >= 0.4)) throw invalid_parameter("zeta_em: sigma must be >= 0.4");
    if (!(std::abs(t) <= 1e8)) throw invalid_parameter("zeta_em: |t| must be <= 1e8");
    if (sigma == 1.0 && t == 0.0) throw invalid_parameter("zeta_em: pole at s = 1");
    tol = std::max(tol, 1e-13);
    if (t < 0.0) {
        EmResult r = zeta_em_core(sigma, -t, tol);
        r.value = std::conj(r.value);
        return r;
    }
    return zeta_em_core(sigma, t, tol);
}

std::complex<double> log_zeta_prime_series(double sigma0, double t, std::int64_t prime_limit) {
    if (!(sigma0 >= 2.0)) throw invalid_parameter("log_zeta_prime_series: sigma0 must be >= 2");
    auto primes = sieve_primes(1.0, static_cast<double>(prime_limit));
    cld s(static_cast<long double>(sigma0), static_cast<long double>(t));
    cld sum(0.0L, 0.0L);
    for (std::int64_t p : primes) {
        long double lp = std::log(static_cast<long double>(p));
        // sum over k of p^{-ks}/k = -log(1 - p^{-s}); expand until negligible
        cld pks = pow_int_cld(lp, -s);
        cld term = pks;
        sum += term;
        for (int k = 2; k <= 64; ++k) {
            term *= pks;
            cld add = term / static_cast<long double>(k);
            sum += add;
            if (std::hypot(add.real(), add.imag()) < 1e-20L) break;
        }
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

LogZetaSample log_zeta(double sigma, double t, double tol) {
    if (t < 0.0) {
        LogZetaSample s = log_zeta(sigma, -t, tol);
        s.t = t;
        s.value = std::conj(s.value);
        s.zeta = std::conj(s.zeta);
        return s;
    }
    if (!(sigma >= 0.4)) throw invalid_parameter("log_zeta: sigma must be >= 0.4");
    if (t < 1.0 && !(sigma > 1.0))
        throw invalid_parameter("log_zeta: heights below 1 need sigma > 1 (pole at s = 1)");

    LogZetaSample out;
    out.sigma = sigma;
    out.t = t;

    // Seed at Re s = 2: |zeta(2+it) - 1| <= zeta(2) - 1 < 1, so the value
    // stays in the right half-plane and the principal log is the branch the
    // absolutely convergent series defines.
    EmResult seed = zeta_em(2.0, t, tol);
    std::complex<double> val = std::log(seed.value);
    double err = seed.err / std::abs(seed.value);
    int steps = 0;

    if (sigma != 2.0) {
        double cur = 2.0;
        EmResult zcur = seed;
        double step = 0.25;
        const bool down = sigma < 2.0;
        while (down ? cur > sigma : cur < sigma) {
            double next = down ? std::max(sigma, cur - step) : std::min(sigma, cur + step);
            EmResult znext = zeta_em(next, t, tol);
            std::complex<double> ratio = znext.value / zcur.value;
            std::complex<double> inc = std::log(ratio);
            if (std::abs(inc.imag()) >= 0.5 * std::numbers::pi ||
                std::abs(inc) >= 0.5 * std::numbers::pi) {
                step *= 0.5;
                if (step < 1e-7)
                    throw accuracy_error("log_zeta: continuation stalled near a zero at sigma = " +
                                         std::to_string(next) + ", t = " + std::to_string(t));
                continue;
            }
            val += inc;
            err += znext.err / std::abs(znext.value) + zcur.err / std::abs(zcur.value);
            cur = next;
            zcur = znext;
            ++steps;
            step = std::min(step * 1.6, 0.5);
        }
        out.zeta = zcur.value;
    } else {
        out.zeta = seed.value;
    }
    out.value = val;
    out.err_est = err + 1e-15;
    out.path_steps = steps;
    return out;
}

ZeroDatabase ZeroDatabase::parse(const std::string& text) {
    ZeroDatabase db;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "verified_height") {
            if (!(ls >> db.verified_height))
                throw invalid_parameter("zero db line " + std::to_string(lineno) +
                                        ": bad verified_height");
            have_header = true;
            continue;
        }
        double v1 = 0, v2 = 0;
        try {
            v1 = std::stod(first);
        } catch (const std::exception&) {
            throw invalid_parameter("zero db line " + std::to_string(lineno) + ": bad number");
        }
        if (ls >> v2) {
            db.offline.emplace_back(v1, v2); // re im
        } else {
            if (!db.ordinates.empty() && v1 <= db.ordinates.back())
                throw invalid_parameter("zero db line " + std::to_string(lineno) +
                                        ": ordinates must ascend");
            if (v1 <= 0)
                throw invalid_parameter("zero db line " + std::to_string(lineno) +
                                        ": ordinates must be positive");
            db.ordinates.push_back(v1);
        }
    }
    if (!have_header) throw invalid_parameter("zero db: missing `verified_height` header");
    return db;
}

ZeroDatabase ZeroDatabase::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_parameter("cannot open zero database: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Indicator indicator_I(double sigma, double t, const ZeroDatabase& db) {
    if (!(t >= 2.0)) throw invalid_parameter("indicator_I: t must be >= 2");
    if (sigma > 1.0) return {1, false}; // zero-free half-plane
    const double w = std::log(t) * std::log(t);

    for (const auto& [re, im] : db.offline)
        if (re >= sigma && std::abs(t - im) <= w) return {0, false};

    if (sigma <= 0.5) {
        // critical-line ordinates count against sigma <= 1/2
        auto lo = std::lower_bound(db.ordinates.begin(), db.ordinates.end(), t - w);
        if (lo != db.ordinates.end() && *lo <= t + w) return {0, false};
    }
    bool certified = (t + w <= db.verified_height);
    return {1, !certified};
}

LogZetaGrid::LogZetaGrid(double sigma, double h_lo, double h_hi, double step, double tol,
                         int threads)
    : sigma_(sigma), h_lo_(h_lo), h_hi_(h_hi) {
    if (!(h_lo >= 1.0)) throw invalid_parameter("LogZetaGrid: h_lo must be >= 1");
    if (!(h_hi > h_lo)) throw invalid_parameter("LogZetaGrid: empty height range");
    if (!(step > 0.0)) throw invalid_parameter("LogZetaGrid: step must be positive");

    auto n = static_cast<std::size_t>(std::ceil((h_hi - h_lo) / step)) + 1;
    if (n < 8) n = 8;
    step_ = (h_hi - h_lo) / static_cast<double>(n - 1);
    samples_.assign(n, {0.0, 0.0});

    // Independently anchored chunks; vertical continuation inside a chunk.
    // The strip right of sigma is zero-free for the certified heights, so
    // horizontal and vertical continuations agree.
    const std::size_t chunk = 2048;
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<std::string> chunk_errors(n_chunks);

    parallel_for(n_chunks, threads, [&](std::size_t ci) {
        try {
            std::size_t i0 = ci * chunk;
            std::size_t i1 = std::min(i0 + chunk, n);
            double h0 = h_lo_ + step_ * static_cast<double>(i0);
            LogZetaSample anchor = log_zeta(sigma_, h0, tol);
            samples_[i0] = anchor.value;
            std::complex<double> val = anchor.value;
            EmResult zprev = zeta_em(sigma_, h0, tol);
            for (std::size_t i = i0 + 1; i < i1; ++i) {
                double h_prev = h_lo_ + step_ * static_cast<double>(i - 1);
                double h = h_lo_ + step_ * static_cast<double>(i);
                EmResult znext = zeta_em(sigma_, h, tol);
                std::complex<double> inc = std::log(znext.value / zprev.value);
                if (std::abs(inc.imag()) >= 0.5 * std::numbers::pi) {
                    // resolve with substeps
                    int pieces = 4;
                    bool ok = false;
                    while (pieces <= 4096 && !ok) {
                        std::complex<double> acc{0.0, 0.0};
                        EmResult zsub = zprev;
                        ok = true;
                        for (int q = 1; q <= pieces; ++q) {
                            double hq = h_prev + (h - h_prev) * q / pieces;
                            EmResult znq = zeta_em(sigma_, hq, tol);
                            std::complex<double> di = std::log(znq.value / zsub.value);
                            if (std::abs(di.imag()) >= 0.5 * std::numbers::pi) {
                                ok = false;
                                break;
                            }
                            acc += di;
                            zsub = znq;
                        }
                        if (ok) inc = acc;
                        else pieces *= 4;
                    }
                    if (!ok)
                        throw accuracy_error("LogZetaGrid: vertical continuation stalled near h = " +
                                             std::to_string(h));
                }
                val += inc;
                samples_[i] = val;
                zprev = znext;
            }
        } catch (const std::exception& e) {
            chunk_errors[ci] = e.what();
        }
    });
    for (const auto& msg : chunk_errors)
        if (!msg.empty()) throw accuracy_error("LogZetaGrid: " + msg);

    // Interpolation error gauge from fourth differences.
    double max_d4 = 0.0;
    for (std::size_t i = 4; i < n; ++i) {
        auto d4 = samples_[i] - 4.0 * samples_[i - 1] + 6.0 * samples_[i - 2] -
                  4.0 * samples_[i - 3] + samples_[i - 4];
        max_d4 = std::max(max_d4, std::abs(d4));
    }
    interp_err_ = 0.0352 * max_d4 + tol; // (9/256) |Delta^4 f| cubic bound
}

std::complex<double> LogZetaGrid::value(double h) const {
    if (!covers(h))
        throw invalid_parameter("LogZetaGrid: height " + std::to_string(h) + " outside [" +
                                std::to_string(h_lo_) + ", " + std::to_string(h_hi_) + "]");
    double x = (h - h_lo_) / step_;
    auto n = samples_.size();
    auto k = static_cast<std::ptrdiff_t>(std::floor(x));
    std::ptrdiff_t i0 = std::clamp<std::ptrdiff_t>(k - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
    double u = x - static_cast<double>(i0); // in [0,3] across the stencil

    // 4-point Lagrange on nodes {0,1,2,3}
    double l0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
    double l1 = u * (u - 2) * (u - 3) / 2.0;
    double l2 = -u * (u - 1) * (u - 3) / 2.0;
    double l3 = u * (u - 1) * (u - 2) / 6.0;
    return l0 * samples_[static_cast<std::size_t>(i0)] +
           l1 * samples_[static_cast<std::size_t>(i0 + 1)] +
           l2 * samples_[static_cast<std::size_t>(i0 + 2)] +
           l3 * samples_[static_cast<std::size_t>(i0 + 3)];
}

} // namespace rzl

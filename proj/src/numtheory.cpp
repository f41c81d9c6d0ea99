#include "rzl/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rzl/errors.hpp"

namespace rzl {

namespace {

// Simple sieve for the base primes up to n (inclusive).
std::vector<std::int64_t> small_primes(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 2) return out;
    std::vector<char> composite(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t i = 2; i * i <= n; ++i)
        if (!composite[static_cast<std::size_t>(i)])
            for (std::int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = 1;
    for (std::int64_t i = 2; i <= n; ++i)
        if (!composite[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

constexpr std::int64_t kSegment = 1 << 20;

// Primes in the exact integer range [first, last].
std::vector<std::int64_t> sieve_range(std::int64_t first, std::int64_t last);

} // namespace

std::vector<std::int64_t> sieve_primes(double lo, double hi, double max_hi) {
    if (!(hi >= 2.0) || !(lo < hi))
        return {};
    if (hi > max_hi)
        throw cap_exceeded("sieve endpoint " + std::to_string(hi) + " exceeds cap " +
                           std::to_string(max_hi));

    // (lo, hi] with exact integer endpoints.
    std::int64_t first = static_cast<std::int64_t>(std::floor(lo)) + 1;
    std::int64_t last = static_cast<std::int64_t>(std::floor(hi));
    if (first < 2) first = 2;
    return sieve_range(first, last);
}

namespace {

std::vector<std::int64_t> sieve_range(std::int64_t first, std::int64_t last) {
    if (last < first) return {};

    std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(last))) + 1;
    while (root * root > last) --root;
    auto base = small_primes(root);

    std::vector<std::int64_t> out;
    std::vector<char> seg;
    for (std::int64_t low = first; low <= last; low += kSegment) {
        std::int64_t high = std::min(low + kSegment - 1, last);
        seg.assign(static_cast<std::size_t>(high - low + 1), 1);
        for (std::int64_t q : base) {
            std::int64_t start = std::max(q * q, ((low + q - 1) / q) * q);
            for (std::int64_t j = start; j <= high; j += q) seg[static_cast<std::size_t>(j - low)] = 0;
        }
        for (std::int64_t v = low; v <= high; ++v)
            if (seg[static_cast<std::size_t>(v - low)] && v >= 2) out.push_back(v);
    }
    return out;
}

} // namespace

bool prime_power_base(std::int64_t n, std::int64_t& p, int& k) {
    if (n < 2) return false;
    std::int64_t m = n;
    std::int64_t d = 2;
    std::int64_t spf = 0;
    while (d * d <= m) {
        if (m % d == 0) {
            spf = d;
            break;
        }
        ++d;
    }
    if (spf == 0) { // n itself prime
        p = n;
        k = 1;
        return true;
    }
    int e = 0;
    while (m % spf == 0) {
        m /= spf;
        ++e;
    }
    if (m != 1) return false;
    p = spf;
    k = e;
    return true;
}

bool is_prime(std::int64_t n) {
    std::int64_t p;
    int k;
    return prime_power_base(n, p, k) && k == 1;
}

double von_mangoldt(std::int64_t n) {
    if (n < 1) throw invalid_parameter("von_mangoldt: n must be >= 1");
    std::int64_t p;
    int k;
    if (prime_power_base(n, p, k)) return std::log(static_cast<double>(p));
    return 0.0;
}

PrimeWindows prime_windows(std::int64_t N) {
    if (N < 16)
        throw invalid_parameter("prime_windows: N = " + std::to_string(N) +
                                " is below 16; the window scale degenerates");
    long double lN = std::log(static_cast<long double>(N));
    long double A = lN * std::log(lN);

    // Endpoints in extended precision; membership in (lo, hi] decided by the
    // exact integer range [floor(lo)+1, floor(hi)].
    long double ep[4] = {std::exp(0.5L) * A, std::exp(1.0L) * A, std::exp(2.0L) * A,
                         std::exp(2.5L) * A};
    auto window = [](long double lo, long double hi) {
        auto first = static_cast<std::int64_t>(std::floor(lo)) + 1;
        auto last = static_cast<std::int64_t>(std::floor(hi));
        return sieve_range(std::max<std::int64_t>(first, 2), last);
    };

    PrimeWindows w;
    w.n_source = N;
    w.lo_minus = static_cast<double>(ep[0]);
    w.hi_minus = static_cast<double>(ep[1]);
    w.lo = static_cast<double>(ep[1]);
    w.hi = static_cast<double>(ep[2]);
    w.lo_plus = static_cast<double>(ep[2]);
    w.hi_plus = static_cast<double>(ep[3]);
    w.p_minus = window(ep[0], ep[1]);
    w.p = window(ep[1], ep[2]);
    w.p_plus = window(ep[2], ep[3]);
    return w;
}

} // namespace rzl

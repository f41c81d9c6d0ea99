#pragma once

#include <cstdint>
#include <vector>

namespace rzl {

/// The three prime windows derived from the budget N.  Interval convention
/// is half-open (lo, hi]; endpoints are e^{1/2,1,2,5/2} * log N * loglog N.
struct PrimeWindows {
    std::int64_t n_source = 0; // the N the endpoints were derived from
    double lo_minus = 0, hi_minus = 0;
    double lo = 0, hi = 0;
    double lo_plus = 0, hi_plus = 0;
    std::vector<std::int64_t> p_minus; // primes in (lo_minus, hi_minus]
    std::vector<std::int64_t> p;       // primes in (lo, hi]
    std::vector<std::int64_t> p_plus;  // primes in (lo_plus, hi_plus]

    bool degenerate() const { return p.empty(); }
};

/// Primes q with lo < q <= hi, ascending.  Segmented sieve; `max_hi` is the
/// memory-safety ceiling for the right endpoint.
std::vector<std::int64_t> sieve_primes(double lo, double hi, double max_hi = 1e12);

/// log p when n = p^k (k >= 1), otherwise 0.  n >= 1.
double von_mangoldt(std::int64_t n);

/// If n = p^k for a prime p, reports p and k.
bool prime_power_base(std::int64_t n, std::int64_t& p, int& k);

bool is_prime(std::int64_t n);

/// Builds the three windows for a budget N >= 16.  Window endpoints are
/// computed in extended precision; membership is decided by exact integer
/// comparison against floor/ceil of the endpoints.
PrimeWindows prime_windows(std::int64_t N);

} // namespace rzl

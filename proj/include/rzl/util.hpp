#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace rzl {

/// Neumaier compensated accumulator. Fixed insertion order gives
/// thread-count-independent results.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

/// floor() with a tiny relative nudge so that values a few ulp below an
/// integer (pow round-off) land on it.
inline long long floor_nudged(double x) {
    double nudge = 1e-12 * std::max(1.0, std::abs(x));
    return static_cast<long long>(std::floor(x + nudge));
}

using u128 = unsigned __int128;

std::string u128_to_string(u128 v);

/// Flat key-value config file: one `key value` or `key = value` pair per
/// line, `#` comments. Later occurrences of a key win.
std::map<std::string, std::string> parse_kv_file(const std::string& path);
std::map<std::string, std::string> parse_kv_text(const std::string& text);

/// Write `content` to `path` atomically (temp file in the same directory,
/// then rename).
void atomic_write_file(const std::string& path, const std::string& content);

/// FNV-1a over raw bytes; used for deterministic table checksums.
std::uint64_t fnv1a64(const void* data, std::size_t n);

/// Parse "lo:hi:n" grid specifications.
struct GridSpec {
    double lo, hi;
    long n;
};
GridSpec parse_grid_spec(const std::string& s);

/// Run fn(i) for i in [0, n). Each index owns its output slot, so the
/// result does not depend on the number of workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace rzl

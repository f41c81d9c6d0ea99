#include "rzl/util.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rzl/errors.hpp"

namespace rzl {

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

static void trim(std::string& s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    auto e = s.find_last_not_of(ws);
    s = (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
}

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        std::string key, val;
        if (eq != std::string::npos) {
            key = line.substr(0, eq);
            val = line.substr(eq + 1);
        } else {
            auto sp = line.find_first_of(" \t");
            if (sp == std::string::npos)
                throw invalid_parameter("config line " + std::to_string(lineno) +
                                        ": expected `key value` or `key = value`");
            key = line.substr(0, sp);
            val = line.substr(sp + 1);
        }
        trim(key);
        trim(val);
        if (key.empty() || val.empty())
            throw invalid_parameter("config line " + std::to_string(lineno) + ": empty key or value");
        out[key] = val;
    }
    return out;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_parameter("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_kv_text(ss.str());
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    static std::atomic<unsigned> counter{0};
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp" + std::to_string(counter++));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

GridSpec parse_grid_spec(const std::string& s) {
    GridSpec g{};
    auto c1 = s.find(':');
    auto c2 = (c1 == std::string::npos) ? std::string::npos : s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw invalid_parameter("grid spec must be lo:hi:n, got `" + s + "`");
    try {
        g.lo = std::stod(s.substr(0, c1));
        g.hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        g.n = std::stol(s.substr(c2 + 1));
    } catch (const std::exception&) {
        throw invalid_parameter("bad grid spec `" + s + "`");
    }
    if (g.n < 1 || !(g.lo <= g.hi)) throw invalid_parameter("bad grid spec `" + s + "`");
    return g;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads < 1) threads = 1;
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw > 0) threads = static_cast<int>(std::min<std::size_t>(threads, hw * 4));
    if (threads == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<std::size_t>(threads, n));
    pool.reserve(spawn);
    for (int k = 0; k < spawn; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace rzl

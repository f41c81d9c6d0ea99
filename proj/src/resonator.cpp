#include "rzl/resonator.hpp"

#include <cmath>

#include "rzl/errors.hpp"
#include "rzl/util.hpp"

namespace rzl {

ResonatorData build_resonator(const SetFamily& fam) {
    if (!fam.enumerated)
        throw precondition_violation("resonator needs an enumerated set family");
    ResonatorData d;
    d.log_m = fam.quant.log_m;
    d.r = fam.quant.r;
    d.sum_f2_M = fam.sum_f2_M;
    Accumulator sr, sr2, srl;
    for (std::size_t i = 0; i < d.r.size(); ++i) {
        sr.add(d.r[i]);
        sr2.add(d.r[i] * d.r[i]);
        srl.add(d.r[i] * d.log_m[i]);
    }
    d.sum_r = sr.value();
    d.sum_r2 = sr2.value();
    d.sum_r_logm = srl.value();
    return d;
}

double f_value(std::uint64_t m, const PrimeWindows& w, double f_p) {
    if (m == 0) throw invalid_parameter("f_value: m must be >= 1");
    if (m == 1) return 1.0;
    std::uint64_t rest = m;
    int count = 0;
    for (std::int64_t p : w.p) {
        auto up = static_cast<std::uint64_t>(p);
        if (rest % up == 0) {
            rest /= up;
            if (rest % up == 0) return 0.0; // square factor
            ++count;
        }
        if (rest == 1) break;
    }
    if (rest != 1) return 0.0; // a prime factor outside the window
    return std::pow(f_p, count);
}

std::complex<double> resonator_value(const ResonatorData& d, double t) {
    Accumulator re, im;
    for (std::size_t i = 0; i < d.r.size(); ++i) {
        double phase = -t * d.log_m[i];
        re.add(d.r[i] * std::cos(phase));
        im.add(d.r[i] * std::sin(phase));
    }
    return {re.value(), im.value()};
}

std::vector<std::complex<double>> resonator_grid(const ResonatorData& d, double t0, double dt,
                                                 std::size_t n) {
    const std::size_t m = d.r.size();
    std::vector<std::complex<double>> rot(m), cur(m);
    for (std::size_t i = 0; i < m; ++i) {
        rot[i] = std::polar(1.0, -dt * d.log_m[i]);
        cur[i] = std::polar(1.0, -t0 * d.log_m[i]);
    }
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            if (k % 65536 == 0) {
                double t = t0 + dt * static_cast<double>(k);
                for (std::size_t i = 0; i < m; ++i) cur[i] = std::polar(1.0, -t * d.log_m[i]);
            } else {
                for (std::size_t i = 0; i < m; ++i) cur[i] *= rot[i];
            }
        }
        Accumulator re, im;
        for (std::size_t i = 0; i < m; ++i) {
            re.add(d.r[i] * cur[i].real());
            im.add(d.r[i] * cur[i].imag());
        }
        out[k] = {re.value(), im.value()};
    }
    return out;
}

RBoundReport check_R_bound(const ResonatorData& d, std::span<const double> t_samples,
                           const Params& p) {
    RBoundReport rep;
    rep.bound = 3.0 * std::pow(p.T, p.kappa) * d.sum_f2_M;
    rep.cs_lhs = d.sum_r * d.sum_r;
    rep.cs_rhs = static_cast<double>(d.size()) * d.sum_r2;
    rep.overlap_lhs = d.sum_r2;
    rep.overlap_rhs = 3.0 * d.sum_f2_M;
    rep.cs_holds = rep.cs_lhs <= rep.cs_rhs * (1.0 + 1e-12);
    rep.overlap_holds = rep.overlap_lhs <= rep.overlap_rhs * (1.0 + 1e-12);

    rep.pass = rep.cs_holds && rep.overlap_holds;
    rep.worst_value = 0.0;
    for (double t : t_samples) {
        auto v = resonator_value(d, t);
        double mag2 = std::norm(v);
        if (mag2 > rep.worst_value) {
            rep.worst_value = mag2;
            rep.worst_t = t;
        }
        if (mag2 > rep.bound * (1.0 + 1e-12)) rep.pass = false;
    }
    return rep;
}

} // namespace rzl

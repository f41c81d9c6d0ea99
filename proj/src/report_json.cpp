#include "rzl/report_json.hpp"

#include "rzl/util.hpp"

namespace rzl {

json to_json(const Params& p) {
    json j;
    j["sigma"] = p.sigma;
    j["beta"] = p.beta;
    j["kappa"] = p.kappa;
    j["theta"] = p.theta;
    j["T"] = p.T;
    j["a"] = p.a;
    j["gamma"] = p.gamma;
    j["b"] = p.b;
    j["N"] = p.N;
    j["N_overridden"] = p.n_overridden;
    j["f_p"] = p.f_p;
    j["k_max"] = p.k_max;
    j["k_min"] = p.k_min;
    return j;
}

json to_json(const BoundRecord& b) {
    json j;
    j["upsilon_shape"] = b.upsilon_shape;
    j["kappa_factor"] = b.kappa_factor;
    j["height_factor"] = b.height_factor;
    j["c"] = b.c;
    j["value"] = b.value;
    return j;
}

json to_json(const PrimeWindows& w) {
    json j;
    j["N"] = w.n_source;
    j["minus"] = {{"lo", w.lo_minus}, {"hi", w.hi_minus}, {"count", w.p_minus.size()},
                  {"primes", w.p_minus}};
    j["middle"] = {{"lo", w.lo}, {"hi", w.hi}, {"count", w.p.size()}, {"primes", w.p}};
    j["plus"] = {{"lo", w.lo_plus}, {"hi", w.hi_plus}, {"count", w.p_plus.size()},
                 {"primes", w.p_plus}};
    j["degenerate"] = w.degenerate();
    return j;
}

json to_json(const SetFamily& fam) {
    json j;
    j["windows"] = to_json(fam.windows);
    j["k_max"] = fam.params.k_max;
    j["k_min"] = fam.params.k_min;
    j["enumerated"] = fam.enumerated;
    if (fam.enumerated) {
        j["support_count"] = fam.m_enum.size();
        j["quantized_count"] = fam.quant.size();
    }
    j["sum_f2_admissible"] = fam.sum_f2_M;
    j["sum_f2_heavy"] = fam.sum_f2_L;
    // prime-weight diagnostics: exact sum vs its PNT-scale comparison value
    double L = fam.params.abs_log_2s1;
    double exact = static_cast<double>(fam.windows.p.size()) / L;
    double pnt = 4.670774270471604 * fam.params.log_N / L;
    j["prime_weight_sum"] = exact;
    j["prime_weight_sum_pnt_scale"] = pnt;
    j["prime_weight_rel_deviation"] = pnt != 0.0 ? (exact - pnt) / pnt : 0.0;
    j["dp_table_checksum"] =
        fnv1a64(fam.sym_sums.data(), fam.sym_sums.size() * sizeof(double));
    return j;
}

json to_json(const Lemma58Report& rep) {
    json j;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["margin"] = rep.margin;
    j["holds"] = rep.holds;
    return j;
}

json to_json(const RBoundReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["bound"] = rep.bound;
    j["worst_value"] = rep.worst_value;
    j["worst_t"] = rep.worst_t;
    j["cauchy_schwarz_lhs"] = rep.cs_lhs;
    j["cauchy_schwarz_rhs"] = rep.cs_rhs;
    j["window_overlap_lhs"] = rep.overlap_lhs;
    j["window_overlap_rhs"] = rep.overlap_rhs;
    return j;
}

json to_json(const LogZetaSample& s) {
    json j;
    j["sigma"] = s.sigma;
    j["t"] = s.t;
    j["log_zeta_re"] = s.value.real();
    j["log_zeta_im"] = s.value.imag();
    j["zeta_re"] = s.zeta.real();
    j["zeta_im"] = s.zeta.imag();
    j["err_est"] = s.err_est;
    j["path_steps"] = s.path_steps;
    return j;
}

json to_json(const ConvolutionReport& rep) {
    json j;
    j["sigma"] = rep.sigma;
    j["t"] = rep.t;
    j["psi"] = rep.psi;
    j["H"] = rep.H;
    if (rep.x) j["x"] = *rep.x;
    if (rep.theta) j["theta"] = *rep.theta;
    j["lhs_re"] = rep.lhs.real();
    j["lhs_im"] = rep.lhs.imag();
    j["rhs_re"] = rep.rhs.real();
    j["rhs_im"] = rep.rhs.imag();
    j["residual"] = rep.residual;
    j["budget"] = rep.budget;
    j["empirical_ratio"] = rep.empirical_ratio;
    j["quadrature_err"] = rep.quadrature_err;
    j["indicator_heuristic"] = rep.indicator_heuristic;
    return j;
}

json to_json(const MomentReport& rep) {
    json j;
    j["M1"] = rep.M1;
    j["M2_re"] = rep.M2_re;
    j["M2_main"] = rep.M2_main;
    j["M2_error_budget"] = rep.M2_error_budget;
    j["ratio"] = rep.ratio;
    j["lemma39_lhs"] = rep.lemma39_lhs;
    j["lemma39_rhs"] = rep.lemma39_rhs;
    j["lemma312_lhs"] = rep.lemma312_lhs;
    j["lemma312_rhs"] = rep.lemma312_rhs;
    j["empirical_c1"] = rep.empirical_c1;
    j["empirical_c2"] = rep.empirical_c2;
    j["surplus_minus"] = rep.surplus_minus;
    j["surplus_plus"] = rep.surplus_plus;
    j["excised_measure"] = rep.excised_measure;
    j["indicator_refusals"] = rep.indicator_refusals;
    j["m1_mode"] = rep.m1_mode == MomentMode::quadrature ? "quad" : "analytic";
    j["m2_mode"] = rep.m2_mode == MomentMode::quadrature ? "quad" : "analytic";
    return j;
}

json to_json(const SearchResult& r) {
    json j;
    j["t_star"] = r.t_star;
    j["value"] = r.value;
    j["theta"] = r.theta;
    j["grid_points"] = r.grid_points;
    j["skipped_points"] = r.skipped_points;
    j["refinement_iters"] = r.refinement_iters;
    j["min_modulus"] = r.min_modulus;
    if (r.bound_value != 0.0) {
        j["bound_value"] = r.bound_value;
        j["ratio_to_bound"] = r.ratio_to_bound;
    }
    return j;
}

} // namespace rzl

// Command-line front door: one binary, one subcommand per module, JSON/CSV
// artifacts written atomically.  Exit codes: 0 success, 2 precondition
// refusal, 1 anything else.

#include <CLI11.hpp>

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "rzl/convolution.hpp"
#include "rzl/errors.hpp"
#include "rzl/moments.hpp"
#include "rzl/numtheory.hpp"
#include "rzl/params.hpp"
#include "rzl/report_json.hpp"
#include "rzl/resonator.hpp"
#include "rzl/search.hpp"
#include "rzl/sets.hpp"
#include "rzl/util.hpp"
#include "rzl/zeta.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    rzl::RawParams raw;
    std::string config_path;
    std::string output_path;
    std::string format = "json";
    std::string zero_db_path;
    int threads = 1;
    std::uint64_t enum_cap = 10'000'000;
    double quad_tol = 1e-8;
    bool literal_window = false;
    long long n_override = -1;

    // which flags the user actually passed; config must not override these
    std::vector<std::string> given;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--sigma", o.raw.sigma, "abscissa in (1/2,1)");
    cmd->add_option("--beta", o.raw.beta, "range exponent in (0,1)");
    cmd->add_option("--kappa", o.raw.kappa, "size exponent in (0, min(sigma-1/2, 1-beta))");
    cmd->add_option("--theta", o.raw.theta, "rotation angle (radians)");
    cmd->add_option("--T", o.raw.T, "height parameter, >= 100");
    cmd->add_option("--a", o.raw.a, "factor-count multiplier, > 1");
    cmd->add_option("--gamma", o.raw.gamma, "threshold multiplier in (0,1)");
    cmd->add_option("--b", o.raw.b, "tilt parameter in (0,1)");
    cmd->add_option("--N", o.n_override, "explicit budget N (overrides floor(T^kappa))");
    cmd->add_option("--config", o.config_path, "flat key-value config file");
    cmd->add_option("-o,--output", o.output_path, "output path (default stdout)");
    cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--zero-db", o.zero_db_path, "zero database (or env RZL_ZERO_DB)");
    cmd->add_option("--threads", o.threads, "worker hint; never changes results");
    cmd->add_option("--enum-cap", o.enum_cap, "enumeration cap");
    cmd->add_option("--quad-tol", o.quad_tol, "quadrature tolerance");
    cmd->add_flag("--r-window-literal", o.literal_window,
                  "use the verbatim (1-1/T)^{j-1} coefficient window");
}

// Flags win over the config file; the file fills whatever was not given.
void merge_config(CLI::App* cmd, CommonOpts& o) {
    if (o.config_path.empty()) return;
    auto kv = rzl::parse_kv_file(o.config_path);
    auto take = [&](const char* key, double& field) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        if (cmd->count(std::string("--") + key) > 0) return;
        field = std::stod(it->second);
    };
    take("sigma", o.raw.sigma);
    take("beta", o.raw.beta);
    take("kappa", o.raw.kappa);
    take("theta", o.raw.theta);
    take("T", o.raw.T);
    take("a", o.raw.a);
    take("gamma", o.raw.gamma);
    take("b", o.raw.b);
    if (auto it = kv.find("N"); it != kv.end() && cmd->count("--N") == 0)
        o.n_override = std::stoll(it->second);
    if (auto it = kv.find("zero_db"); it != kv.end() && cmd->count("--zero-db") == 0)
        o.zero_db_path = it->second;
    if (auto it = kv.find("r_window_literal"); it != kv.end() && cmd->count("--r-window-literal") == 0)
        o.literal_window = (it->second == "1" || it->second == "true");
}

rzl::Params make_params(CLI::App* cmd, CommonOpts& o, bool sets_required) {
    merge_config(cmd, o);
    if (o.n_override >= 0) o.raw.N_override = o.n_override;
    return rzl::Params::validate(o.raw, sets_required);
}

rzl::ZeroDatabase load_zero_db(const CommonOpts& o) {
    std::string path = o.zero_db_path;
    if (path.empty()) {
        if (const char* env = std::getenv("RZL_ZERO_DB")) path = env;
    }
    if (path.empty()) {
        // permissive default: nothing certified, everything heuristic
        rzl::ZeroDatabase db;
        db.verified_height = 0.0;
        return db;
    }
    return rzl::ZeroDatabase::load(path);
}

void emit(const CommonOpts& o, const std::string& content) {
    if (o.output_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        rzl::atomic_write_file(o.output_path, content);
    }
}

void provenance(const std::string& command, const rzl::json& params) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    std::cerr << "# rzl " << kVersion << " command=" << command << " unix_time=" << secs
              << " params=" << params.dump() << "\n";
}

std::string csv_escape(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonance-method toolkit for extreme values of log zeta in the critical strip"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    CommonOpts o;

    auto* cmd_windows = app.add_subcommand("windows", "prime windows for a budget N");
    long long win_n = 1000;
    cmd_windows->add_option("--N", win_n, "budget")->required();
    cmd_windows->add_option("-o,--output", o.output_path);

    auto* cmd_bounds = app.add_subcommand("bounds", "bound-shape calculators");
    add_common(cmd_bounds, o);

    auto* cmd_sets = app.add_subcommand("sets", "set family, counts and weight ratios");
    add_common(cmd_sets, o);

    auto* cmd_ratios = app.add_subcommand("ratios", "weight-ratio diagnostics only");
    add_common(cmd_ratios, o);

    auto* cmd_resonator = app.add_subcommand("resonator", "resonator values on a t-grid");
    add_common(cmd_resonator, o);
    std::string t_grid = "0:100:1001";
    cmd_resonator->add_option("--t-grid", t_grid, "lo:hi:n");

    auto* cmd_zeta = app.add_subcommand("zeta", "one zeta / log zeta sample or a grid");
    add_common(cmd_zeta, o);
    double zeta_t = 100.0;
    bool zeta_log = false;
    std::string zeta_grid;
    cmd_zeta->add_option("--t", zeta_t, "height");
    cmd_zeta->add_flag("--log", zeta_log, "emit the branch-tracked logarithm");
    cmd_zeta->add_option("--grid", zeta_grid, "lo:hi:n CSV sweep");

    auto* cmd_conv = app.add_subcommand("verify-convolution", "kernel integral vs prime sum");
    add_common(cmd_conv, o);
    double conv_t = 1000.0, conv_psi = 0.5, conv_H = 0.0;
    std::optional<double> conv_x;
    std::string sweep_t;
    cmd_conv->add_option("--t", conv_t, "height, >= 15");
    cmd_conv->add_option("--psi", conv_psi, "kernel width");
    cmd_conv->add_option("--H", conv_H, "kernel shift");
    double conv_x_val = 0.0;
    auto* xopt = cmd_conv->add_option("--x", conv_x_val, "combined form center");
    cmd_conv->add_option("--sweep-t", sweep_t, "lo:hi:n residual sweep (CSV)");

    auto* cmd_moments = app.add_subcommand("moments", "the two moments and the lemma chain");
    add_common(cmd_moments, o);
    std::string mode = "analytic";
    cmd_moments->add_option("--mode", mode, "quad or analytic")
        ->check(CLI::IsMember({"quad", "analytic"}));

    auto* cmd_search = app.add_subcommand("search", "extreme-value scan");
    add_common(cmd_search, o);
    long grid_n = 100000;
    std::string sweep_thetas;
    std::string samples_csv;
    cmd_search->add_option("--grid", grid_n, "grid points");
    cmd_search->add_option("--sweep", sweep_thetas, "comma-separated theta list");
    cmd_search->add_option("--samples-csv", samples_csv, "write all grid samples to this CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (cmd_windows->parsed()) {
            auto w = rzl::prime_windows(win_n);
            provenance("windows", {{"N", win_n}});
            emit(o, rzl::to_json(w).dump(2));
            return 0;
        }

        if (cmd_bounds->parsed()) {
            rzl::Params p = make_params(cmd_bounds, o, false);
            rzl::json j;
            j["params"] = rzl::to_json(p);
            j["c_sigma"] = rzl::c_sigma(p.sigma);
            j["gamma_max"] = rzl::gamma_max(p.sigma, p.b);
            j["sigma_star"] = rzl::sigma_star();
            j["theorem_bound"] = rzl::to_json(rzl::theorem_bound(p));
            provenance("bounds", rzl::to_json(p));
            emit(o, j.dump(2));
            return 0;
        }

        if (cmd_sets->parsed() || cmd_ratios->parsed()) {
            CLI::App* cmd = cmd_sets->parsed() ? cmd_sets : cmd_ratios;
            rzl::Params p = make_params(cmd, o, true);
            rzl::json j;
            j["params"] = rzl::to_json(p);
            if (cmd_sets->parsed()) {
                rzl::SetBuildOptions so;
                so.cap = o.enum_cap;
                so.literal_window = o.literal_window;
                rzl::SetFamily fam = rzl::build_set_family(p, so);
                j["sets"] = rzl::to_json(fam);
            }
            j["tail_ratio_M"] = rzl::tail_ratio_M(p);
            j["ratio_L_over_M"] = rzl::ratio_L_over_M(p);
            j["lemma58"] = rzl::to_json(rzl::lemma58_check(p));
            provenance(cmd_sets->parsed() ? "sets" : "ratios", rzl::to_json(p));
            emit(o, j.dump(2));
            return 0;
        }

        if (cmd_resonator->parsed()) {
            rzl::Params p = make_params(cmd_resonator, o, true);
            rzl::SetBuildOptions so;
            so.cap = o.enum_cap;
            so.literal_window = o.literal_window;
            rzl::SetFamily fam = rzl::build_set_family(p, so);
            rzl::ResonatorData d = rzl::build_resonator(fam);
            auto g = rzl::parse_grid_spec(t_grid);
            provenance("resonator", rzl::to_json(p));
            std::ostringstream out;
            out << "t,re_R,im_R,abs2_R\n";
            double dt = g.n > 1 ? (g.hi - g.lo) / static_cast<double>(g.n - 1) : 0.0;
            auto vals = rzl::resonator_grid(d, g.lo, dt, static_cast<std::size_t>(g.n));
            for (long i = 0; i < g.n; ++i) {
                double t = g.lo + dt * static_cast<double>(i);
                auto v = vals[static_cast<std::size_t>(i)];
                out << csv_escape(t) << ',' << csv_escape(v.real()) << ',' << csv_escape(v.imag())
                    << ',' << csv_escape(std::norm(v)) << "\n";
            }
            emit(o, out.str());
            return 0;
        }

        if (cmd_zeta->parsed()) {
            merge_config(cmd_zeta, o);
            double sigma = o.raw.sigma;
            provenance("zeta", {{"sigma", sigma}, {"t", zeta_t}});
            if (!zeta_grid.empty()) {
                auto g = rzl::parse_grid_spec(zeta_grid);
                std::ostringstream out;
                out << "t,zeta_re,zeta_im,log_re,log_im,err_est\n";
                for (long i = 0; i < g.n; ++i) {
                    double t = g.n > 1 ? g.lo + (g.hi - g.lo) * i / (g.n - 1) : g.lo;
                    auto s = rzl::log_zeta(sigma, t);
                    out << csv_escape(t) << ',' << csv_escape(s.zeta.real()) << ','
                        << csv_escape(s.zeta.imag()) << ',' << csv_escape(s.value.real()) << ','
                        << csv_escape(s.value.imag()) << ',' << csv_escape(s.err_est) << "\n";
                }
                emit(o, out.str());
            } else if (zeta_log) {
                auto s = rzl::log_zeta(sigma, zeta_t);
                emit(o, rzl::to_json(s).dump(2));
            } else {
                auto z = rzl::zeta_em(sigma, zeta_t);
                rzl::json j;
                j["sigma"] = sigma;
                j["t"] = zeta_t;
                j["zeta_re"] = z.value.real();
                j["zeta_im"] = z.value.imag();
                j["err_est"] = z.err;
                j["terms"] = z.terms;
                emit(o, j.dump(2));
            }
            return 0;
        }

        if (cmd_conv->parsed()) {
            merge_config(cmd_conv, o);
            double sigma = o.raw.sigma;
            auto db = load_zero_db(o);
            rzl::LhsOptions lo;
            lo.tol = o.quad_tol;
            if (!sweep_t.empty()) {
                auto g = rzl::parse_grid_spec(sweep_t);
                std::ostringstream out;
                out << "t,residual,budget,ratio\n";
                for (long i = 0; i < g.n; ++i) {
                    double t = g.n > 1 ? g.lo + (g.hi - g.lo) * i / (g.n - 1) : g.lo;
                    auto rep = rzl::verify_convolution(sigma, t, conv_psi, conv_H, db, lo);
                    out << csv_escape(t) << ',' << csv_escape(rep.residual) << ','
                        << csv_escape(rep.budget) << ',' << csv_escape(rep.empirical_ratio)
                        << "\n";
                }
                provenance("verify-convolution", {{"sigma", sigma}, {"sweep", sweep_t}});
                emit(o, out.str());
                return 0;
            }
            rzl::ConvolutionReport rep;
            if (xopt->count() > 0) {
                conv_x = conv_x_val;
                rep = rzl::conv_combined(sigma, conv_t, *conv_x, o.raw.theta, db, lo);
            } else {
                rep = rzl::verify_convolution(sigma, conv_t, conv_psi, conv_H, db, lo);
            }
            provenance("verify-convolution", {{"sigma", sigma}, {"t", conv_t}});
            emit(o, rzl::to_json(rep).dump(2));
            return 0;
        }

        if (cmd_moments->parsed()) {
            rzl::Params p = make_params(cmd_moments, o, true);
            auto db = load_zero_db(o);
            rzl::SetBuildOptions so;
            so.cap = o.enum_cap;
            so.literal_window = o.literal_window;
            rzl::SetFamily fam = rzl::build_set_family(p, so);
            rzl::ResonatorData d = rzl::build_resonator(fam);
            rzl::MomentMode mm =
                mode == "quad" ? rzl::MomentMode::quadrature : rzl::MomentMode::analytic;

            std::optional<rzl::LogZetaGrid> grid;
            if (mm == rzl::MomentMode::quadrature) {
                double t_lo = std::pow(p.T, p.beta);
                double t_hi = p.T * std::log(p.T);
                double pad_lo = std::log(t_lo) * std::log(t_lo);
                double pad_hi = std::log(t_hi) * std::log(t_hi);
                grid.emplace(p.sigma, std::max(1.0, t_lo - pad_lo - 1.0), t_hi + pad_hi + 1.0,
                             0.02, 1e-10, o.threads);
            }
            auto rep = rzl::resonance_ratio(fam, d, p, db, mm, mm,
                                            grid ? &*grid : nullptr, 1e-6);
            provenance("moments", rzl::to_json(p));
            emit(o, rzl::to_json(rep).dump(2));
            return 0;
        }

        if (cmd_search->parsed()) {
            rzl::Params p = make_params(cmd_search, o, false);
            provenance("search", rzl::to_json(p));
            if (!sweep_thetas.empty()) {
                std::vector<double> thetas;
                std::stringstream ss(sweep_thetas);
                std::string tok;
                while (std::getline(ss, tok, ',')) thetas.push_back(std::stod(tok));
                auto results =
                    rzl::theta_sweep(p.sigma, p.beta, p.T, thetas, grid_n, o.threads);
                rzl::json j = rzl::json::array();
                for (const auto& r : results) {
                    auto cmp = rzl::compare_to_theorem(r, p);
                    rzl::SearchResult rr = r;
                    rr.bound_value = cmp.bound_value;
                    rr.ratio_to_bound = cmp.ratio;
                    j.push_back(rzl::to_json(rr));
                }
                emit(o, j.dump(2));
                return 0;
            }
            rzl::GridSamples g;
            {
                double t_lo = std::pow(p.T, p.beta);
                g = rzl::sample_log_grid(p.sigma, t_lo, p.T, grid_n, o.threads);
            }
            auto r = rzl::scan_cached(g, p.theta);
            auto cmp = rzl::compare_to_theorem(r, p);
            r.bound_value = cmp.bound_value;
            r.ratio_to_bound = cmp.ratio;
            if (!samples_csv.empty()) {
                std::ostringstream out;
                out << "t,log_re,log_im,objective\n";
                for (std::size_t i = 0; i < g.t.size(); ++i) {
                    double obj = std::cos(p.theta) * g.w[i].real() +
                                 std::sin(p.theta) * g.w[i].imag();
                    out << csv_escape(g.t[i]) << ',' << csv_escape(g.w[i].real()) << ','
                        << csv_escape(g.w[i].imag()) << ',' << csv_escape(obj) << "\n";
                }
                rzl::atomic_write_file(samples_csv, out.str());
            }
            emit(o, rzl::to_json(r).dump(2));
            return 0;
        }
    } catch (const rzl::precondition_violation& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

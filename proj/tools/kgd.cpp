// kgd: classify cubic nonlinearities, run Klein-Gordon simulations, fit decay
// rates, and bundle reports. See README for config schema and CSV layouts.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fmt/core.h>
#include <fstream>
#include <iostream>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kgd/analysis.hpp"
#include "kgd/classifier.hpp"
#include "kgd/presets.hpp"
#include "kgd/profile_ode.hpp"
#include "kgd/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInstability = 3;
constexpr int kExitInconclusive = 4;

struct ExperimentConfig {
    kgd::CubicNonlinearity nl;
    std::string nl_name = "custom";
    double eps = 0.1;
    double B = 10.0;
    double L = 1100.0;
    int N = 8192;
    double dt = 0.02;
    double T = 1000.0;
    double record_stride = 1.0;
    std::vector<double> norms = {2.0, 4.0};
    std::vector<double> record_times;
    std::vector<double> z_samples = {0.0};
    std::vector<double> tau_samples;
    double fit_t_min = 100.0;
    std::string scheme = "strang_split";
    std::string shape = "bump";
};

double parse_p(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("norm p must be a number or \"inf\"");
    }
    return j.get<double>();
}

std::string p_label(double p) {
    return std::isinf(p) ? "inf" : fmt::format("{:g}", p);
}

ExperimentConfig load_config(const std::string& path, const std::string& preset_override) {
    ExperimentConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open config: " + path);
        json j = json::parse(in);
        if (j.value("schema_version", 0) != kSchemaVersion)
            throw std::invalid_argument(fmt::format("config schema_version must be {}", kSchemaVersion));
        if (j.contains("nonlinearity")) {
            const auto& nj = j["nonlinearity"];
            if (nj.contains("preset")) {
                cfg.nl_name = nj["preset"].get<std::string>();
                cfg.nl = kgd::preset(cfg.nl_name);
            } else if (nj.contains("gamma")) {
                auto g = nj["gamma"].get<std::vector<double>>();
                if (g.size() != 10) throw std::invalid_argument("gamma must have 10 entries");
                std::copy(g.begin(), g.end(), cfg.nl.gamma.begin());
            }
        }
        cfg.eps = j.value("eps", cfg.eps);
        cfg.B = j.value("B", cfg.B);
        if (j.contains("grid")) {
            cfg.L = j["grid"].value("L", cfg.L);
            cfg.N = j["grid"].value("N", cfg.N);
        }
        if (j.contains("time")) {
            cfg.dt = j["time"].value("dt", cfg.dt);
            cfg.T = j["time"].value("T", cfg.T);
            cfg.record_stride = j["time"].value("record_stride", cfg.record_stride);
        }
        if (j.contains("norms")) {
            cfg.norms.clear();
            for (const auto& v : j["norms"]) cfg.norms.push_back(parse_p(v));
        }
        if (j.contains("record_times"))
            cfg.record_times = j["record_times"].get<std::vector<double>>();
        if (j.contains("analysis")) {
            const auto& a = j["analysis"];
            if (a.contains("z")) cfg.z_samples = a["z"].get<std::vector<double>>();
            if (a.contains("tau")) cfg.tau_samples = a["tau"].get<std::vector<double>>();
            cfg.fit_t_min = a.value("fit_t_min", cfg.fit_t_min);
        }
        cfg.scheme = j.value("scheme", cfg.scheme);
        cfg.shape = j.value("shape", cfg.shape);
    }
    if (!preset_override.empty()) {
        cfg.nl_name = preset_override;
        cfg.nl = kgd::preset(preset_override);
    }
    return cfg;
}

kgd::SolverConfig to_solver_config(const ExperimentConfig& cfg) {
    kgd::SolverConfig sc;
    sc.eps = cfg.eps;
    sc.B = cfg.B;
    sc.dt = cfg.dt;
    sc.T = cfg.T;
    sc.norm_stride = cfg.record_stride;
    sc.norm_ps = cfg.norms;
    sc.record_times = cfg.record_times;
    if (cfg.scheme == "strang_split") sc.scheme = kgd::Scheme::StrangSplit;
    else if (cfg.scheme == "rk4_mol") sc.scheme = kgd::Scheme::Rk4Mol;
    else throw std::invalid_argument("scheme must be strang_split or rk4_mol");
    if (cfg.shape == "bump") sc.shape = kgd::DataShape::Bump;
    else if (cfg.shape == "bump_pair") sc.shape = kgd::DataShape::BumpPair;
    else throw std::invalid_argument("shape must be bump or bump_pair");
    return sc;
}

json classification_json(const kgd::CubicNonlinearity& nl) {
    json out;
    const auto poly = kgd::P_F_coeffs(nl);
    out["p_coeffs"] = {poly.p0, poly.p1, poly.p2, poly.p3};
    const auto cls = kgd::classify(nl);
    out["class"] = kgd::to_string(cls.tag);
    json consts = json::object();
    for (auto [j, c] : cls.constants) consts[std::to_string(j)] = c;
    out["constants"] = consts;
    if (cls.tag == kgd::DissipationTag::C) {
        out["y0"] = cls.y0;
        out["z0"] = cls.z0;
    }
    if (cls.tag != kgd::DissipationTag::NotDissipative) {
        const auto law = kgd::predicted_decay(cls);
        json decay = json::array();
        for (double p : {2.0, 4.0, std::numeric_limits<double>::infinity()}) {
            for (auto target : {kgd::NormTarget::u, kgd::NormTarget::du}) {
                decay.push_back({{"p", p_label(p)},
                                 {"target", target == kgd::NormTarget::u ? "u" : "du"},
                                 {"a", kgd::DecayLaw::algebraic_exponent(p)},
                                 {"q", law.log_exponent(target, p)},
                                 {"r", law.loglog_exponent(target, p)}});
            }
        }
        out["decay_table"] = decay;
    }
    return out;
}

int cmd_classify(const ExperimentConfig& cfg, const std::string& out_dir) {
    std::cout << "nonlinearity: " << cfg.nl_name << "\n";
    std::cout << "K_F on z grid:\n";
    for (double z = -2.0; z <= 2.0 + 1e-12; z += 0.5) {
        const auto k = kgd::K_F_closed(cfg.nl, z);
        std::cout << fmt::format("  z={:+.2f}  Re K_F={:+.6f}  Im K_F={:+.6f}\n", z, k.real(),
                                 k.imag());
    }
    const json cj = classification_json(cfg.nl);
    std::cout << fmt::format("P_F coefficients: {}\n", cj["p_coeffs"].dump());
    std::cout << "class: " << cj["class"].get<std::string>() << "\n";
    if (cj.contains("z0")) std::cout << fmt::format("degenerate ray z0 = {:.6f}\n", cj["z0"].get<double>());
    for (auto& [jk, cv] : cj["constants"].items())
        std::cout << fmt::format("  C_{} = {:.10f}\n", jk, cv.get<double>());
    if (cj.contains("decay_table")) {
        std::cout << "predicted decay ||target||_p = O(t^-a (log t)^-q (loglog t)^r):\n";
        for (const auto& row : cj["decay_table"])
            std::cout << fmt::format("  p={:<4} {:<3} a={:.3f} q={:.4f} r={:.2f}\n",
                                     row["p"].get<std::string>(), row["target"].get<std::string>(),
                                     row["a"].get<double>(), row["q"].get<double>(),
                                     row["r"].get<double>());
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream o(fs::path(out_dir) / "classification.json");
        o << cj.dump(2) << "\n";
    }
    return 0;
}

void write_norms_csv(const fs::path& path, const kgd::RunRecord& rec) {
    std::ofstream o(path);
    o << "t,p,norm_u,norm_ut,norm_ux\n";
    for (std::size_t i = 0; i < rec.norms.times.size(); ++i)
        for (const auto& [p, series] : rec.norms.u)
            o << fmt::format("{:.10e},{},{:.12e},{:.12e},{:.12e}\n", rec.norms.times[i],
                             p_label(p), series[i], rec.norms.v.at(p)[i], rec.norms.ux.at(p)[i]);
}

void write_snapshot_csv(const fs::path& dir, const kgd::Snapshot& snap, const kgd::Grid1D& grid) {
    std::ofstream o(dir / fmt::format("snapshot_t{:012.4f}.csv", snap.t));
    o << "t,x,u,v,ux\n";
    for (int k = 0; k < grid.N; ++k)
        o << fmt::format("{:.10e},{:.10e},{:.12e},{:.12e},{:.12e}\n", snap.t, grid.x(k),
                         snap.u[k], snap.v[k], snap.ux[k]);
}

int cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir) {
    const kgd::Grid1D grid(cfg.L, cfg.N);
    const auto sc = to_solver_config(cfg);
    kgd::validate_config(sc, grid);
    const auto rec = kgd::run_simulation(sc, cfg.nl, grid);
    fs::create_directories(out_dir);
    write_norms_csv(fs::path(out_dir) / "norms.csv", rec);
    for (const auto& snap : rec.snapshots) write_snapshot_csv(out_dir, snap, grid);
    std::cout << fmt::format("simulated {} to T={} ({} norm rows, {} snapshots) -> {}\n",
                             cfg.nl_name, cfg.T, rec.norms.times.size(), rec.snapshots.size(),
                             out_dir);
    return 0;
}

struct NormTable {
    std::vector<double> times;                       // unique, ascending
    std::map<double, std::vector<double>> u, ut, ux; // keyed by p
};

NormTable read_norms_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    NormTable tab;
    std::string line;
    std::getline(in, line);  // header
    double last_t = -1;
    while (std::getline(in, line)) {
        double t, nu, nv, nx;
        char pbuf[32];
        if (std::sscanf(line.c_str(), "%lf,%31[^,],%lf,%lf,%lf", &t, pbuf, &nu, &nv, &nx) != 5)
            continue;
        const double p = std::string(pbuf) == "inf" ? std::numeric_limits<double>::infinity()
                                                    : std::atof(pbuf);
        if (t != last_t) {
            tab.times.push_back(t);
            last_t = t;
        }
        tab.u[p].push_back(nu);
        tab.ut[p].push_back(nv);
        tab.ux[p].push_back(nx);
    }
    return tab;
}

int cmd_fit(const ExperimentConfig& cfg, const std::string& run_dir, const std::string& out_dir) {
    const auto tab = read_norms_csv(fs::path(run_dir) / "norms.csv");
    const auto cls = kgd::classify(cfg.nl);
    const auto law = kgd::predicted_decay(cls);

    json fits = json::array();
    bool any_conclusive = false, any = false;
    for (const auto& [p, series_u] : tab.u) {
        for (auto target : {kgd::NormTarget::u, kgd::NormTarget::du}) {
            std::vector<double> t, y;
            for (std::size_t i = 0; i < tab.times.size(); ++i) {
                if (tab.times[i] < cfg.fit_t_min) continue;
                t.push_back(tab.times[i]);
                y.push_back(target == kgd::NormTarget::u
                                ? series_u[i]
                                : tab.ut.at(p)[i] + tab.ux.at(p)[i]);
            }
            kgd::DecayFit fit;
            try {
                fit = kgd::fit_decay(t, y, p, target);
            } catch (const std::invalid_argument& e) {
                std::cerr << "skipping p=" << p_label(p) << ": " << e.what() << "\n";
                continue;
            }
            const auto cmp = kgd::compare_with_theorem(fit, law);
            any = true;
            if (cmp.verdict != kgd::Verdict::Inconclusive) any_conclusive = true;
            std::cout << fmt::format("p={:<4} {:<3} q_fit={:+.4f} q_pred={:.4f} -> {} ({})\n",
                                     p_label(p), target == kgd::NormTarget::u ? "u" : "du",
                                     fit.q_fit, cmp.q_predicted, kgd::to_string(cmp.verdict),
                                     cmp.reason);
            fits.push_back({{"p", p_label(p)},
                            {"target", target == kgd::NormTarget::u ? "u" : "du"},
                            {"a_fixed", fit.a_fixed},
                            {"q_fit", fit.q_fit},
                            {"q_predicted", cmp.q_predicted},
                            {"residual", fit.residual},
                            {"window", {fit.t_min, fit.t_max}},
                            {"verdict", kgd::to_string(cmp.verdict)},
                            {"reason", cmp.reason}});
        }
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream o(fs::path(out_dir) / "fits.json");
        o << json{{"class", kgd::to_string(cls.tag)}, {"fits", fits}}.dump(2) << "\n";
    }
    if (!any) throw std::invalid_argument("no fittable norm series found");
    return any_conclusive ? 0 : kExitInconclusive;
}

int cmd_profile_ode(double kre, double kim, double b0re, double b0im, double tau0, double tau_end,
                    const std::string& forcing_spec, const std::string& out_dir) {
    kgd::ProfileParams params{{kre, kim}, {b0re, b0im}, tau0};
    kgd::Forcing forcing;
    if (forcing_spec != "none") {
        double c, q;
        if (std::sscanf(forcing_spec.c_str(), "power:%lf,%lf", &c, &q) != 2)
            throw std::invalid_argument("forcing must be 'none' or 'power:<c>,<q>'");
        forcing = [c, q](double tau) { return kgd::Complex(c * std::pow(tau, -q), 0); };
    }
    const auto traj = kgd::integrate_profile(params, forcing, tau_end);
    fs::create_directories(out_dir);
    {
        std::ofstream o(fs::path(out_dir) / "trajectory.csv");
        o << "tau,re_beta,im_beta,abs_beta\n";
        for (std::size_t i = 0; i < traj.taus.size(); ++i)
            o << fmt::format("{:.10e},{:.12e},{:.12e},{:.12e}\n", traj.taus[i],
                             traj.betas[i].real(), traj.betas[i].imag(), std::abs(traj.betas[i]));
    }
    const auto dev = kgd::asymptotics_deviation(params, forcing, tau0 * 10, tau_end);
    json report = {{"beta_inf", {dev.beta_inf.real(), dev.beta_inf.imag()}},
                   {"max_scaled_deviation", dev.max_scaled}};
    std::ofstream o(fs::path(out_dir) / "deviation.json");
    o << report.dump(2) << "\n";
    std::cout << fmt::format("beta_inf = {:+.8f}{:+.8f}i, max (log tau)^(3/2)-scaled deviation {:.3e}\n",
                             dev.beta_inf.real(), dev.beta_inf.imag(), dev.max_scaled);
    return 0;
}

int cmd_report(const ExperimentConfig& cfg, const std::string& run_dir, const std::string& out_dir) {
    std::ifstream in(fs::path(run_dir) / "fits.json");
    if (!in) throw std::invalid_argument("fits.json not found in " + run_dir + "; run `kgd fit` first");
    json fits = json::parse(in);
    const json cj = classification_json(cfg.nl);
    fs::create_directories(out_dir);
    std::ofstream o(fs::path(out_dir) / "report.md");
    o << "# Decay report: " << cfg.nl_name << "\n\n";
    o << "Class: **" << cj["class"].get<std::string>() << "**\n\n";
    if (cj.contains("z0")) o << fmt::format("Degenerate ray: z0 = {:.6f}\n\n", cj["z0"].get<double>());
    o << "| p | target | a | q predicted | q fitted | verdict |\n";
    o << "|---|--------|---|-------------|----------|--------|\n";
    for (const auto& f : fits["fits"]) {
        o << fmt::format("| {} | {} | {:.3f} | {:.4f} | {:+.4f} | {} |\n",
                         f["p"].get<std::string>(), f["target"].get<std::string>(),
                         f["a_fixed"].get<double>(), f["q_predicted"].get<double>(),
                         f["q_fit"].get<double>(), f["verdict"].get<std::string>());
    }
    o << "\nMeasured exponents are fitted on t in [" << cfg.fit_t_min
      << ", T]; predicted rates are upper bounds, so q_fit above q_predicted is consistent.\n";
    std::cout << "wrote " << (fs::path(out_dir) / "report.md").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* s = std::getenv("KGD_THREADS")) {
        const int n = std::atoi(s);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
    CLI::App app{"Dissipative cubic Klein-Gordon toolkit"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir = "out", run_dir;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON experiment config");
        sub->add_option("--preset", preset_name, "named nonlinearity preset");
        sub->add_option("--out", out_dir, "output directory");
    };

    std::string classify_out;
    auto* classify = app.add_subcommand("classify", "classify a nonlinearity and print decay predictions");
    classify->add_option("--config", config_path, "JSON experiment config");
    classify->add_option("--preset", preset_name, "named nonlinearity preset");
    classify->add_option("--out", classify_out, "output directory (optional)");

    auto* simulate = app.add_subcommand("simulate", "run the Cauchy problem and write norm/snapshot CSVs");
    add_common(simulate);

    auto* fit = app.add_subcommand("fit", "fit decay exponents from a norms.csv and compare with theory");
    add_common(fit);
    fit->add_option("--run", run_dir, "directory containing norms.csv")->required();

    auto* report = app.add_subcommand("report", "bundle classification and fits into markdown");
    add_common(report);
    report->add_option("--run", run_dir, "directory containing fits.json")->required();

    double kre = 0.375, kim = 0, b0re = 1, b0im = 0, tau0 = 3, tau_end = 1e4;
    std::string forcing_spec = "none";
    auto* pode = app.add_subcommand("profile-ode", "integrate the limit profile ODE");
    pode->add_option("--kappa-re", kre);
    pode->add_option("--kappa-im", kim);
    pode->add_option("--beta0-re", b0re);
    pode->add_option("--beta0-im", b0im);
    pode->add_option("--tau0", tau0);
    pode->add_option("--tau-end", tau_end);
    pode->add_option("--forcing", forcing_spec, "'none' or 'power:<c>,<q>' for c*tau^-q");
    pode->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pode->parsed())
            return cmd_profile_ode(kre, kim, b0re, b0im, tau0, tau_end, forcing_spec, out_dir);
        const auto cfg = load_config(config_path, preset_name);
        if (classify->parsed()) return cmd_classify(cfg, classify_out);
        if (simulate->parsed()) return cmd_simulate(cfg, out_dir);
        if (fit->parsed()) return cmd_fit(cfg, run_dir, out_dir);
        if (report->parsed()) return cmd_report(cfg, run_dir, out_dir);
    } catch (const kgd::Instability& e) {
        std::cerr << "instability: " << e.what() << "\n";
        return kExitInstability;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitValidation;
    } catch (const json::exception& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}

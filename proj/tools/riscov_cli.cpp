// Command-line front end: experiment orchestration and CSV/manifest emission.
// Subcommands: simulate (Monte Carlo), analyze (closed-form/quadrature),
// sweep (parameter grid with either or both engines), validate (self-checks).
//
// Exit codes: 0 success, 1 configuration/usage error, 2 analytic layer failed
// to converge, 3 validation checks failed.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "riscov/analytic_cov.hpp"
#include "riscov/analytic_dist.hpp"
#include "riscov/config.hpp"
#include "riscov/geometry.hpp"
#include "riscov/sinr_mc.hpp"
#include "riscov/units.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<long long> trials;
    std::optional<int> threads;
};

riscov::ExperimentConfig effective_config(const CliOverrides& o) {
    riscov::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = riscov::load_config(o.config_path);
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.out) cfg.out_dir = *o.out;
    if (o.trials) cfg.trials = *o.trials;
    if (o.threads) cfg.threads = *o.threads;
    else if (cfg.threads == 0) {
        if (const char* env = std::getenv("RISCOV_THREADS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end && *end == '\0' && v > 0) cfg.threads = static_cast<int>(v);
        }
    }
    return cfg;
}

int resolved_threads(const riscov::ExperimentConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string csv_num(double v) {
    if (std::isnan(v)) return "nan";
    return riscov::format_double(v);
}

void write_manifest(const riscov::ExperimentConfig& cfg, const std::string& command) {
    std::ofstream out(std::filesystem::path(cfg.out_dir) / "manifest.cfg");
    out << "# run manifest (re-parseable as a config file)\n";
    out << "# version " << kVersion << "\n";
    out << "# command " << command << "\n";
    out << "# coverage.csv columns: eps1_db,eps2_db,p_mc,ci,p_analytic,err_budget,"
           "zeta_d,zeta_v followed by one column per sweep key\n";
    out << "# distributions.csv columns: kind,x,pdf,cdf (analytic curves; x in m, "
           "or m^2 for cascaded_eta)\n";
    out << "# ratepair.csv columns: w_comm_bps,w_comm_se,w_sens_bps,w_sens_se,trials "
           "preceded by one column per sweep key\n";
    out << serialize_config(cfg);
}

struct CoverageRow {
    double eps1_db = 0.0, eps2_db = 0.0;
    double p_mc = std::nan(""), ci = std::nan("");
    double p_analytic = std::nan(""), err_budget = std::nan("");
    double zeta_d = std::nan(""), zeta_v = std::nan("");
    std::vector<double> sweep_cells;
};

void write_coverage_csv(const riscov::ExperimentConfig& cfg,
                        const std::vector<CoverageRow>& rows) {
    std::ofstream out(std::filesystem::path(cfg.out_dir) / "coverage.csv");
    out << "eps1_db,eps2_db,p_mc,ci,p_analytic,err_budget,zeta_d,zeta_v";
    for (const std::string& k : cfg.sweep_keys) out << "," << k;
    out << "\n";
    for (const CoverageRow& r : rows) {
        out << csv_num(r.eps1_db) << "," << csv_num(r.eps2_db) << "," << csv_num(r.p_mc)
            << "," << csv_num(r.ci) << "," << csv_num(r.p_analytic) << ","
            << csv_num(r.err_budget) << "," << csv_num(r.zeta_d) << ","
            << csv_num(r.zeta_v);
        for (double c : r.sweep_cells) out << "," << csv_num(c);
        out << "\n";
    }
}

void write_distributions_csv(const riscov::ExperimentConfig& cfg) {
    riscov::ScenarioParams p = cfg.scenario();
    std::ofstream out(std::filesystem::path(cfg.out_dir) / "distributions.csv");
    out << "kind,x,pdf,cdf\n";
    auto emit = [&](const char* kind, const riscov::DistanceDistribution& d) {
        const int n = 200;
        for (int i = 1; i <= n; ++i) {
            double x = d.support_hi * i / n;
            out << kind << "," << csv_num(x) << "," << csv_num(d.pdf(x)) << ","
                << csv_num(d.cdf(x)) << "\n";
        }
    };
    emit("nearest_los_bs", riscov::nearest_los_bs_dist(p));
    emit("nearest_vlos_bs", riscov::nearest_vlos_bs_dist(p));
    emit("nearest_los_ris", riscov::nearest_los_ris_dist(p));
    if (p.lambda_r > 0.0 && p.lambda_b > 0.0)
        emit("cascaded_eta", riscov::CascadedLengthDist(p).as_distribution());
}

struct RateRow {
    std::vector<double> sweep_cells;
    riscov::RatePair rates;
};

void write_ratepair_csv(const riscov::ExperimentConfig& cfg,
                        const std::vector<RateRow>& rows) {
    std::ofstream out(std::filesystem::path(cfg.out_dir) / "ratepair.csv");
    for (const std::string& k : cfg.sweep_keys) out << k << ",";
    out << "w_comm_bps,w_comm_se,w_sens_bps,w_sens_se,trials\n";
    for (const RateRow& r : rows) {
        for (double c : r.sweep_cells) out << csv_num(c) << ",";
        out << csv_num(r.rates.comm_rate) << "," << csv_num(r.rates.comm_se) << ","
            << csv_num(r.rates.sens_rate) << "," << csv_num(r.rates.sens_se) << ","
            << r.rates.n_trials << "\n";
    }
}

// Runs the engines selected by cfg.mode for one scenario; appends coverage
// rows (and a rate row when simulating). Returns false if any analytic
// evaluation failed to converge.
bool run_point(const riscov::ExperimentConfig& cfg, const riscov::ScenarioParams& p,
               const std::vector<double>& sweep_cells, std::vector<CoverageRow>& cov,
               std::vector<RateRow>& rates) {
    const bool mc = cfg.mode != "analyze";
    const bool an = cfg.mode != "simulate";
    const int threads = resolved_threads(cfg);
    std::vector<CoverageRow> rows(cfg.thresholds_db.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].eps1_db = cfg.thresholds_db[i].first;
        rows[i].eps2_db = cfg.thresholds_db[i].second;
        rows[i].sweep_cells = sweep_cells;
    }
    bool converged = true;
    if (mc) {
        std::vector<std::pair<double, double>> linear;
        linear.reserve(rows.size());
        for (const auto& [e1, e2] : cfg.thresholds_db)
            linear.emplace_back(riscov::db_to_linear(e1), riscov::db_to_linear(e2));
        std::vector<riscov::CoverageResult> res = riscov::estimate_coverage_grid(
            p, linear, static_cast<std::uint64_t>(cfg.trials), cfg.master_seed, threads);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i].p_mc = res[i].p_cs;
            rows[i].ci = res[i].ci_halfwidth;
            rows[i].zeta_d = res[i].zeta_d_hat;
            rows[i].zeta_v = res[i].zeta_v_hat;
        }
        RateRow rr;
        rr.sweep_cells = sweep_cells;
        rr.rates = riscov::estimate_rate_pair(p, static_cast<std::uint64_t>(cfg.trials),
                                              cfg.master_seed, threads);
        rates.push_back(std::move(rr));
    }
    if (an) {
        riscov::CoverageEvaluator ev(p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            riscov::MarginalCoverage m =
                ev.marginal_coverage(riscov::db_to_linear(rows[i].eps1_db),
                                     riscov::db_to_linear(rows[i].eps2_db));
            rows[i].p_analytic = m.p_cs;
            rows[i].err_budget = m.error_budget;
            rows[i].zeta_d = m.zeta_d;
            rows[i].zeta_v = m.zeta_v;
            converged = converged && m.converged;
        }
    }
    cov.insert(cov.end(), rows.begin(), rows.end());
    return converged;
}

int run_experiment(const CliOverrides& o, const std::string& command) {
    riscov::ExperimentConfig cfg = effective_config(o);
    if (command != "sweep") {
        cfg.sweep_keys.clear();
        cfg.sweep_rows.clear();
    }
    if (command == "simulate") cfg.mode = "simulate";
    if (command == "analyze") cfg.mode = "analyze";
    cfg.validate();
    if (command == "sweep" && cfg.sweep_keys.empty())
        throw riscov::ConfigError("sweep_param: required for the sweep subcommand");
    std::filesystem::create_directories(cfg.out_dir);

    std::vector<CoverageRow> cov;
    std::vector<RateRow> rates;
    bool converged = true;
    if (cfg.sweep_keys.empty()) {
        converged = run_point(cfg, cfg.scenario(), {}, cov, rates);
    } else {
        for (const std::vector<double>& row : cfg.sweep_rows) {
            riscov::ExperimentConfig point = cfg;
            for (std::size_t k = 0; k < cfg.sweep_keys.size(); ++k)
                riscov::apply_config_entry(point, cfg.sweep_keys[k],
                                           riscov::format_double(row[k]));
            converged = run_point(cfg, point.scenario(), row, cov, rates) && converged;
        }
    }

    write_coverage_csv(cfg, cov);
    write_distributions_csv(cfg);
    if (cfg.mode != "analyze") write_ratepair_csv(cfg, rates);
    write_manifest(cfg, command);
    if (!converged) {
        std::cerr << "analytic quadrature did not converge within budget; "
                     "see err_budget column\n";
        return 2;
    }
    std::cout << "wrote " << cov.size() << " coverage rows to " << cfg.out_dir << "\n";
    return 0;
}

// Kolmogorov-Smirnov distance between finite samples (NaN = point absent,
// counted in the denominator) and a possibly defective CDF.
double ks_distance(std::vector<double> samples, const riscov::DistanceDistribution& d) {
    std::size_t total = samples.size();
    samples.erase(std::remove_if(samples.begin(), samples.end(),
                                 [](double v) { return std::isnan(v); }),
                  samples.end());
    std::sort(samples.begin(), samples.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double fx = d.cdf(samples[i]);
        double lo = static_cast<double>(i) / total;
        double hi = static_cast<double>(i + 1) / total;
        worst = std::max({worst, std::abs(fx - lo), std::abs(fx - hi)});
    }
    return worst;
}

int run_validate(const CliOverrides& o) {
    riscov::ExperimentConfig cfg = effective_config(o);
    cfg.validate();
    riscov::ScenarioParams p = cfg.scenario();
    int failures = 0;
    auto report = [&](const char* name, bool pass, double value, double limit) {
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << value
                  << " (limit " << limit << ")\n";
        if (!pass) ++failures;
    };

    {   // config round-trip
        riscov::ExperimentConfig reparsed = riscov::parse_config(riscov::serialize_config(cfg));
        bool ok = reparsed == cfg;
        report("config round-trip identical", ok, ok ? 0.0 : 1.0, 0.0);
    }
    {   // explicit blockage geometry vs thinning law at r = 100 m
        riscov::ScenarioParams q = p;
        q.window_radius = 400.0;
        const int fields = 20000;
        int los = 0;
        riscov::Rng rng(cfg.master_seed);
        for (int i = 0; i < fields; ++i) {
            rng.reseed_stream(cfg.master_seed, 900000 + i);
            std::vector<riscov::Blockage> blk = riscov::sample_blockages(q, rng);
            riscov::OriginLosIndex idx(blk);
            double ang = rng.uniform(0.0, 6.283185307179586);
            if (idx.is_los({100.0 * std::cos(ang), 100.0 * std::sin(ang)})) ++los;
        }
        double frac = static_cast<double>(los) / fields;
        double want = riscov::los_probability(100.0, p.beta());
        report("explicit LoS fraction at 100 m vs exp(-beta r)", std::abs(frac - want) < 0.02,
               std::abs(frac - want), 0.02);
    }
    riscov::DistanceSamples ds = riscov::sample_distances(p, 10000, cfg.master_seed);
    {
        double ks = ks_distance(ds.d0l, riscov::nearest_los_bs_dist(p));
        report("KS nearest LoS BS distance", ks < 0.03, ks, 0.03);
        ks = ks_distance(ds.d0v, riscov::nearest_vlos_bs_dist(p));
        report("KS nearest virtual-LoS BS distance", ks < 0.03, ks, 0.03);
        ks = ks_distance(ds.ris, riscov::nearest_los_ris_dist(p));
        report("KS nearest LoS RIS distance", ks < 0.03, ks, 0.03);
        if (p.lambda_r > 0.0 && p.lambda_b > 0.0) {
            ks = ks_distance(ds.eta, riscov::CascadedLengthDist(p).as_distribution());
            report("KS cascaded length", ks < 0.03, ks, 0.03);
        }
    }
    {   // association split, analytic vs Monte Carlo
        riscov::AssociationProbabilities ap = riscov::analytic_association_split(p);
        std::uint64_t n = ds.d0l.size();
        double zd_hat = static_cast<double>(ds.n_direct) / n;
        double zv_hat = static_cast<double>(ds.n_cascaded) / n;
        double err = std::max(std::abs(ap.zeta_d - zd_hat), std::abs(ap.zeta_v - zv_hat));
        report("association split analytic vs MC", err < 0.015, err, 0.015);
    }
    {   // zero-threshold limit of the marginal coverage
        riscov::CoverageEvaluator ev(p, riscov::CovTuning::fast());
        riscov::MarginalCoverage m = ev.marginal_coverage(0.0, 0.0);
        double err = std::abs(m.p_cs - (m.zeta_d + m.zeta_v));
        report("zero-threshold coverage equals association mass", err < 2e-3, err, 2e-3);
    }
    std::cout << (failures == 0 ? "all checks passed\n" : "some checks FAILED\n");
    return failures == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted mmWave ISAC coverage: Monte Carlo and analytic engines"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CliOverrides o;
    std::string command;
    for (const char* name : {"simulate", "analyze", "sweep", "validate"}) {
        CLI::App* sub = app.add_subcommand(
            name, std::string(name) + " experiment described by the config");
        sub->add_option("--config", o.config_path, "key=value config file");
        sub->add_option("--seed", o.seed, "master seed override");
        sub->add_option("--out", o.out, "output directory override");
        sub->add_option("--trials", o.trials, "Monte Carlo drop count override");
        sub->add_option("--threads", o.threads,
                        "worker thread override (or RISCOV_THREADS env)");
        sub->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        if (command == "validate") return run_validate(o);
        return run_experiment(o, command);
    } catch (const riscov::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

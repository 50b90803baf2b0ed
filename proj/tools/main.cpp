// Command-line front end: run, replicate, sweep, calibrate.
#include "covsim/config.hpp"
#include "covsim/harness.hpp"
#include "covsim/io.hpp"
#include "covsim/simulation.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

namespace fs = std::filesystem;
using namespace covsim;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> scheme;
    std::string out_dir = ".";
    bool trace = false;
    std::optional<std::int64_t> trace_stride;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_trace) {
    cmd->add_option("--config", a.config_path, "Configuration file (json)");
    cmd->add_option("--seed", a.seed, "Master seed (overrides the config)");
    cmd->add_option("--scheme", a.scheme, "Scheme: s1, s2 or s3 (overrides the config)")
        ->check(CLI::IsMember({"s1", "s2", "s3"}));
    cmd->add_option("--out", a.out_dir, "Output directory (created if missing)");
    if (with_trace) {
        cmd->add_flag("--trace", a.trace, "Write per-drone trajectory files");
        cmd->add_option("--trace-stride", a.trace_stride,
                        "Sample every n-th slot in trajectory files");
    }
}

SimConfig build_config(const CommonArgs& a) {
    SimConfig cfg;
    if (!a.config_path.empty()) {
        cfg = load_config(a.config_path);
    }
    if (a.seed.has_value()) {
        cfg.seed = *a.seed;
    }
    if (a.scheme.has_value()) {
        cfg.scheme = scheme_from_string(*a.scheme);
    }
    if (a.trace) {
        cfg.trace.enabled = true;
    }
    if (a.trace_stride.has_value()) {
        cfg.trace.stride = *a.trace_stride;
    }
    validate_config(cfg);
    return cfg;
}

std::string out_path(const CommonArgs& a, const std::string& name) {
    fs::create_directories(a.out_dir);
    return (fs::path(a.out_dir) / name).string();
}

void print_report_line(const MetricsReport& r) {
    std::cout << "scheme=" << to_string(r.scheme) << " seed=" << r.seed
              << " slots=" << r.slots
              << " E_T=" << format_double(r.e_t_mean_per_s) << "/s"
              << " V_time=" << format_double(r.v_time_mean_min) << "min"
              << (r.v_time_any_censored ? " (censored)" : "")
              << " V_violation=" << format_double(r.v_violation_mean_pct) << "%"
              << " theta=" << format_double(r.theta_rate_per_s) << "/s";
    if (r.estimation_error.has_value()) {
        std::cout << " est_err=" << format_double(*r.estimation_error);
    }
    std::cout << "\n";
}

int cmd_run(const CommonArgs& a) {
    SimConfig cfg = build_config(a);
    RunArtifacts art = run_simulation(cfg);
    write_run_summary(out_path(a, "summary.json"), cfg, art.report);
    write_metrics_csv(out_path(a, "metrics.csv"), {art.report});
    for (std::size_t i = 0; i < art.paths.size(); ++i) {
        write_path_csv(out_path(a, "path_" + std::to_string(i) + ".csv"), art.paths[i]);
    }
    print_report_line(art.report);
    return 0;
}

int cmd_replicate(const CommonArgs& a, int reps) {
    SimConfig cfg = build_config(a);
    if (reps > 0) {
        cfg.replications = reps;
    }
    PooledReport pooled = replicate(cfg, cfg.replications);
    write_replicate_summary(out_path(a, "summary.json"), cfg, pooled);
    write_metrics_csv(out_path(a, "metrics.csv"), pooled.reps);
    std::cout << "scheme=" << to_string(cfg.scheme) << " reps=" << pooled.reps.size()
              << " E_T=" << format_double(pooled.e_t_per_s.mean) << "/s (se "
              << format_double(pooled.e_t_per_s.se) << ")"
              << " V_time=" << format_double(pooled.v_time_min.mean) << "min (se "
              << format_double(pooled.v_time_min.se) << ")"
              << " V_violation=" << format_double(pooled.v_violation_pct.mean) << "% (se "
              << format_double(pooled.v_violation_pct.se) << ")"
              << " theta=" << format_double(pooled.theta_rate_per_s.mean) << "/s\n";
    return 0;
}

int cmd_sweep(const CommonArgs& a, const std::vector<std::string>& config_paths,
              const std::string& schemes_csv, int reps) {
    std::vector<SimConfig> configs;
    if (!config_paths.empty()) {
        for (const std::string& p : config_paths) {
            configs.push_back(load_config(p));
        }
    } else {
        SimConfig base = build_config(a);
        std::vector<std::string> schemes;
        std::size_t pos = 0;
        while (pos <= schemes_csv.size()) {
            std::size_t comma = schemes_csv.find(',', pos);
            if (comma == std::string::npos) comma = schemes_csv.size();
            if (comma > pos) schemes.push_back(schemes_csv.substr(pos, comma - pos));
            pos = comma + 1;
        }
        for (const std::string& s : schemes) {
            SimConfig cfg = base;
            cfg.scheme = scheme_from_string(s);
            configs.push_back(cfg);
        }
    }
    for (SimConfig& cfg : configs) {
        if (a.seed.has_value()) cfg.seed = *a.seed;
        if (reps > 0) cfg.replications = reps;
        validate_config(cfg);
    }
    std::vector<SweepRow> rows = sweep(configs);
    write_sweep_csv(out_path(a, "sweep.csv"), rows);
    for (const SweepRow& row : rows) {
        if (row.ok) {
            std::cout << to_string(row.cfg.scheme)
                      << ": E_T=" << format_double(row.pooled.e_t_per_s.mean) << "/s"
                      << " V_time=" << format_double(row.pooled.v_time_min.mean) << "min"
                      << " V_violation=" << format_double(row.pooled.v_violation_pct.mean)
                      << "%"
                      << " theta=" << format_double(row.pooled.theta_rate_per_s.mean)
                      << "/s\n";
        } else {
            std::cout << to_string(row.cfg.scheme) << ": error: " << row.error << "\n";
        }
    }
    return 0;
}

int cmd_calibrate(const CommonArgs& a, double target, double tol) {
    SimConfig cfg = build_config(a);
    cfg.scheme = SchemeId::S2;
    CalibrationResult res = calibrate_event_rate(cfg, target, tol);
    write_calibration_summary(out_path(a, "summary.json"), cfg, res);
    std::cout << "walk.step_len_m=" << format_double(res.step_len_m)
              << " event_rate=" << format_double(res.event_rate_per_s) << "/s"
              << " target=" << format_double(target) << "/s"
              << " evaluations=" << res.evaluations << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Drone-swarm border-surveillance simulator: compares a blind periodic "
                 "recall scheme (s1), an event-triggered crossing-report scheme (s2) and "
                 "a periodic ranging scheme (s3) on energy, coverage and containment."};
    app.require_subcommand(1);

    CommonArgs run_args, rep_args, sweep_args, cal_args;
    int reps = 0;
    std::vector<std::string> sweep_configs;
    std::string sweep_schemes = "s1,s2,s3";
    int sweep_reps = 0;
    double target = 0.0577;
    double tol = 0.05;

    CLI::App* c_run = app.add_subcommand("run", "Run one simulation");
    add_common(c_run, run_args, true);

    CLI::App* c_rep = app.add_subcommand("replicate", "Run independent replications");
    add_common(c_rep, rep_args, false);
    c_rep->add_option("--reps", reps, "Replication count (overrides the config)");

    CLI::App* c_sweep = app.add_subcommand("sweep", "Compare schemes side by side");
    add_common(c_sweep, sweep_args, false);
    c_sweep->add_option("--configs", sweep_configs,
                        "Explicit config files, one row each (overrides --schemes)");
    c_sweep->add_option("--schemes", sweep_schemes,
                        "Comma-separated schemes swept over the base config");
    c_sweep->add_option("--reps", sweep_reps, "Replication count for every row");

    CLI::App* c_cal = app.add_subcommand(
        "calibrate", "Find the walk step length matching a crossing-event rate");
    add_common(c_cal, cal_args, false);
    c_cal->add_option("--target", target, "Target event rate, events per second");
    c_cal->add_option("--tol", tol, "Relative tolerance on the achieved rate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_run->parsed()) return cmd_run(run_args);
        if (c_rep->parsed()) return cmd_replicate(rep_args, reps);
        if (c_sweep->parsed()) return cmd_sweep(sweep_args, sweep_configs, sweep_schemes,
                                                sweep_reps);
        if (c_cal->parsed()) return cmd_calibrate(cal_args, target, tol);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include "covsim/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace covsim {

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

json pooled_metric(const Pooled& p) {
    if (p.n == 0) {
        return json(nullptr);
    }
    return json{{"mean", p.mean}, {"se", p.se}, {"n", p.n}};
}

const char* mode_name(MotionMode m) {
    return m == MotionMode::Walking ? "walking" : "returning";
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

json report_to_json(const MetricsReport& r) {
    json j;
    j["scheme"] = to_string(r.scheme);
    j["seed"] = r.seed;
    j["replication"] = r.replication;
    j["slots"] = r.slots;
    j["slot_seconds"] = r.T_k;
    j["elapsed_s"] = r.elapsed_s;
    j["per_drone"] = {
        {"v_time_min", r.v_time_min},
        {"v_time_censored", r.v_time_censored},
        {"epochs_completed", r.epochs_completed},
        {"v_violation_pct", r.v_violation_pct},
        {"e_t_per_s", r.e_t_per_s},
        {"command_count", r.command_count},
        {"sensor_tx_count", r.sensor_tx_count},
    };
    j["periodic_tx_count"] = r.periodic_tx_count;
    j["v_time_mean_min"] = r.v_time_mean_min;
    j["v_time_any_censored"] = r.v_time_any_censored;
    j["v_violation_mean_pct"] = r.v_violation_mean_pct;
    j["e_t_mean_per_s"] = r.e_t_mean_per_s;
    j["command_rate_per_s"] = r.command_rate_per_s;
    j["theta_rate_per_s"] = r.theta_rate_per_s;
    j["estimation_error_rate"] =
        r.estimation_error.has_value() ? json(*r.estimation_error) : json(nullptr);
    j["pass_time"] = r.pass_time.has_value() ? json(*r.pass_time) : json(nullptr);
    j["pass_violation"] =
        r.pass_violation.has_value() ? json(*r.pass_violation) : json(nullptr);
    return j;
}

json pooled_to_json(const PooledReport& p) {
    json j;
    j["replications"] = p.reps.size();
    j["v_time_min"] = pooled_metric(p.v_time_min);
    j["v_violation_pct"] = pooled_metric(p.v_violation_pct);
    j["e_t_per_s"] = pooled_metric(p.e_t_per_s);
    j["theta_rate_per_s"] = pooled_metric(p.theta_rate_per_s);
    j["estimation_error_rate"] = pooled_metric(p.estimation_error);
    return j;
}

void write_run_summary(const std::string& path, const SimConfig& cfg,
                       const MetricsReport& r) {
    json j;
    j["kind"] = "run";
    j["config"] = config_to_json(cfg);
    j["results"] = report_to_json(r);
    write_text(path, j.dump(2) + "\n");
}

void write_replicate_summary(const std::string& path, const SimConfig& cfg,
                             const PooledReport& p) {
    json j;
    j["kind"] = "replicate";
    j["config"] = config_to_json(cfg);
    j["pooled"] = pooled_to_json(p);
    json reps = json::array();
    for (const MetricsReport& r : p.reps) {
        reps.push_back(report_to_json(r));
    }
    j["runs"] = std::move(reps);
    write_text(path, j.dump(2) + "\n");
}

void write_calibration_summary(const std::string& path, const SimConfig& cfg,
                               const CalibrationResult& res) {
    json j;
    j["kind"] = "calibrate";
    j["config"] = config_to_json(cfg);
    j["target_rate_per_s"] = res.target_rate_per_s;
    j["step_len_m"] = res.step_len_m;
    j["event_rate_per_s"] = res.event_rate_per_s;
    j["evaluations"] = res.evaluations;
    json probes = json::array();
    for (const CalibrationProbe& p : res.probes) {
        probes.push_back({{"step_len_m", p.step_len_m},
                          {"event_rate_per_s", p.event_rate_per_s}});
    }
    j["probes"] = std::move(probes);
    write_text(path, j.dump(2) + "\n");
}

void write_metrics_csv(const std::string& path, const std::vector<MetricsReport>& reps) {
    std::string out = "replication,drone,v_time_min,v_time_censored,epochs_completed,"
                      "v_violation_pct,e_t_per_s,command_count,sensor_tx_count\n";
    for (const MetricsReport& r : reps) {
        for (std::size_t i = 0; i < r.v_time_min.size(); ++i) {
            out += std::to_string(r.replication) + ',' + std::to_string(i) + ',' +
                   format_double(r.v_time_min[i]) + ',' +
                   (r.v_time_censored[i] ? "1," : "0,") +
                   std::to_string(r.epochs_completed[i]) + ',' +
                   format_double(r.v_violation_pct[i]) + ',' +
                   format_double(r.e_t_per_s[i]) + ',' +
                   std::to_string(r.command_count[i]) + ',' +
                   std::to_string(r.sensor_tx_count[i]) + '\n';
        }
    }
    write_text(path, out);
}

void write_path_csv(const std::string& path, const std::vector<PathSample>& samples) {
    std::string out = "slot,t_seconds,x_m,y_m,mode,inside_flag\n";
    for (const PathSample& s : samples) {
        out += std::to_string(s.slot) + ',' + format_double(s.t_seconds) + ',' +
               format_double(s.x_m) + ',' + format_double(s.y_m) + ',' +
               mode_name(s.mode) + ',' + (s.inside ? "1\n" : "0\n");
    }
    write_text(path, out);
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::string out =
        "scheme,status,replications,e_t_per_s,e_t_se,v_time_min,v_time_se,"
        "v_time_censored,v_violation_pct,v_violation_se,theta_rate_per_s,"
        "estimation_error_rate,error\n";
    for (const SweepRow& row : rows) {
        out += to_string(row.cfg.scheme) + ',';
        if (!row.ok) {
            std::string msg = row.error;
            for (char& ch : msg) {
                if (ch == ',' || ch == '\n') ch = ';';
            }
            out += "error,,,,,,,,,,," + msg + '\n';
            continue;
        }
        bool censored = false;
        for (const MetricsReport& r : row.pooled.reps) {
            censored = censored || r.v_time_any_censored;
        }
        const PooledReport& p = row.pooled;
        out += "ok," + std::to_string(p.reps.size()) + ',' +
               format_double(p.e_t_per_s.mean) + ',' + format_double(p.e_t_per_s.se) + ',' +
               format_double(p.v_time_min.mean) + ',' + format_double(p.v_time_min.se) +
               ',' + (censored ? "1," : "0,") + format_double(p.v_violation_pct.mean) +
               ',' + format_double(p.v_violation_pct.se) + ',' +
               format_double(p.theta_rate_per_s.mean) + ',' +
               (p.estimation_error.n > 0 ? format_double(p.estimation_error.mean)
                                         : std::string()) +
               ",\n";
    }
    write_text(path, out);
}

} // namespace covsim

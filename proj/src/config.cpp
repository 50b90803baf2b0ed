#include "covsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace covsim {

namespace {

using nlohmann::json;

std::string join_issues(const std::vector<std::string>& issues) {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const std::string& s : issues) {
        os << "\n  - " << s;
    }
    return os.str();
}

/// Collects issues instead of throwing on the first one.
struct Checker {
    std::vector<std::string> issues;

    void reject_unknown(const json& obj, const std::string& scope,
                        std::initializer_list<const char*> allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool known = false;
            for (const char* k : allowed) {
                if (it.key() == k) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                issues.push_back("unknown key: " + scope + it.key());
            }
        }
    }

    template <typename T>
    void get(const json& obj, const std::string& scope, const char* key, T& out) {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) {
            return;
        }
        try {
            out = it->get<T>();
        } catch (const json::exception&) {
            issues.push_back(scope + std::string(key) + ": wrong type");
        }
    }

    void get_optional(const json& obj, const std::string& scope, const char* key,
                      std::optional<double>& out) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return;
        }
        if (it->is_null()) {
            out.reset();
            return;
        }
        try {
            out = it->get<double>();
        } catch (const json::exception&) {
            issues.push_back(scope + std::string(key) + ": wrong type");
        }
    }
};

} // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

SimConfig parse_config(const json& j) {
    if (!j.is_object()) {
        throw ConfigError({"top level: must be an object"});
    }
    SimConfig cfg;
    Checker c;
    c.reject_unknown(j, "", {"scheme", "seed", "horizon_slots", "slot_seconds",
                             "replications", "arena", "walk", "s1", "s2", "s3",
                             "coverage", "energy", "thresholds", "trace"});

    if (j.contains("scheme") && !j["scheme"].is_null()) {
        try {
            cfg.scheme = scheme_from_string(j["scheme"].get<std::string>());
        } catch (const std::exception&) {
            c.issues.push_back("scheme: must be one of s1, s2, s3");
        }
    }
    c.get(j, "", "seed", cfg.seed);
    c.get(j, "", "horizon_slots", cfg.horizon_slots);
    c.get(j, "", "slot_seconds", cfg.slot_seconds);
    c.get(j, "", "replications", cfg.replications);

    if (j.contains("arena")) {
        const json& a = j["arena"];
        c.reject_unknown(a, "arena.", {"width_m", "height_m", "rows", "cols"});
        c.get(a, "arena.", "width_m", cfg.arena.width);
        c.get(a, "arena.", "height_m", cfg.arena.height);
        c.get(a, "arena.", "rows", cfg.arena.rows);
        c.get(a, "arena.", "cols", cfg.arena.cols);
    }
    if (j.contains("walk")) {
        const json& w = j["walk"];
        c.reject_unknown(w, "walk.", {"step_len_m", "arrival_eps_m"});
        c.get(w, "walk.", "step_len_m", cfg.walk.step_len_m);
        c.get(w, "walk.", "arrival_eps_m", cfg.walk.arrival_eps_m);
    }
    if (j.contains("s1")) {
        const json& s = j["s1"];
        c.reject_unknown(s, "s1.", {"interval_min_s", "interval_max_s"});
        c.get(s, "s1.", "interval_min_s", cfg.s1.interval_min_s);
        c.get(s, "s1.", "interval_max_s", cfg.s1.interval_max_s);
    }
    if (j.contains("s2")) {
        const json& s = j["s2"];
        c.reject_unknown(s, "s2.",
                         {"p_false_positive", "p_false_negative", "recall_watchdog_slots"});
        c.get(s, "s2.", "p_false_positive", cfg.s2.p_false_positive);
        c.get(s, "s2.", "p_false_negative", cfg.s2.p_false_negative);
        c.get(s, "s2.", "recall_watchdog_slots", cfg.s2.recall_watchdog_slots);
    }
    if (j.contains("s3")) {
        const json& s = j["s3"];
        c.reject_unknown(s, "s3.",
                         {"mode", "quantization_m", "proc_delay_s", "anchors",
                          "distance_noise_std_m", "command_reentered"});
        if (s.contains("mode") && !s["mode"].is_null()) {
            std::string m;
            c.get(s, "s3.", "mode", m);
            if (m == "abstract") {
                cfg.s3.mode = S3Mode::Abstract;
            } else if (m == "explicit") {
                cfg.s3.mode = S3Mode::Explicit;
            } else if (!m.empty()) {
                c.issues.push_back("s3.mode: must be abstract or explicit");
            }
        }
        c.get(s, "s3.", "quantization_m", cfg.s3.quantization_m);
        c.get(s, "s3.", "proc_delay_s", cfg.s3.proc_delay_s);
        c.get(s, "s3.", "distance_noise_std_m", cfg.s3.distance_noise_std_m);
        c.get(s, "s3.", "command_reentered", cfg.s3.command_reentered);
        if (s.contains("anchors") && !s["anchors"].is_null()) {
            const json& an = s["anchors"];
            bool ok = an.is_array() && an.size() == 3;
            if (ok) {
                for (std::size_t i = 0; i < 3; ++i) {
                    if (!an[i].is_array() || an[i].size() != 2 ||
                        !an[i][0].is_number() || !an[i][1].is_number()) {
                        ok = false;
                        break;
                    }
                    cfg.s3.anchors.pos[i] = Vec2{an[i][0].get<double>(), an[i][1].get<double>()};
                }
            }
            if (!ok) {
                c.issues.push_back("s3.anchors: must be three [x, y] pairs");
            }
        }
    }
    if (j.contains("coverage")) {
        const json& s = j["coverage"];
        c.reject_unknown(s, "coverage.", {"resolution_m"});
        c.get(s, "coverage.", "resolution_m", cfg.coverage.resolution_m);
    }
    if (j.contains("energy")) {
        const json& s = j["energy"];
        c.reject_unknown(s, "energy.", {"bits_per_tx", "bandwidth_hz", "noise_psd_w_per_hz"});
        c.get(s, "energy.", "bits_per_tx", cfg.energy.bits_per_tx);
        c.get(s, "energy.", "bandwidth_hz", cfg.energy.bandwidth_hz);
        c.get(s, "energy.", "noise_psd_w_per_hz", cfg.energy.noise_psd_w_per_hz);
    }
    if (j.contains("thresholds")) {
        const json& s = j["thresholds"];
        c.reject_unknown(s, "thresholds.", {"coverage_time_min", "violation_pct"});
        c.get_optional(s, "thresholds.", "coverage_time_min", cfg.thresholds.coverage_time_min);
        c.get_optional(s, "thresholds.", "violation_pct", cfg.thresholds.violation_pct);
    }
    if (j.contains("trace")) {
        const json& s = j["trace"];
        c.reject_unknown(s, "trace.", {"enabled", "stride"});
        c.get(s, "trace.", "enabled", cfg.trace.enabled);
        c.get(s, "trace.", "stride", cfg.trace.stride);
    }
    if (!c.issues.empty()) {
        throw ConfigError(std::move(c.issues));
    }
    validate_config(cfg);
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("json syntax: ") + e.what()});
    }
    return parse_config(j);
}

void validate_config(const SimConfig& cfg) {
    std::vector<std::string> issues;
    auto require = [&](bool ok, const char* msg) {
        if (!ok) issues.push_back(msg);
    };

    require(cfg.horizon_slots > 0, "horizon_slots: must be > 0");
    require(cfg.slot_seconds > 0.0 && std::isfinite(cfg.slot_seconds),
            "slot_seconds: must be > 0");
    require(cfg.replications >= 1, "replications: must be >= 1");
    require(cfg.arena.width > 0.0 && cfg.arena.height > 0.0,
            "arena: width_m and height_m must be > 0");
    require(cfg.arena.rows >= 1 && cfg.arena.cols >= 1,
            "arena: rows and cols must be >= 1");
    require(cfg.walk.step_len_m > 0.0, "walk.step_len_m: must be > 0");
    require(cfg.walk.arrival_eps_m >= 0.0, "walk.arrival_eps_m: must be >= 0");
    require(cfg.s1.interval_min_s > 0.0, "s1.interval_min_s: must be > 0");
    require(cfg.s1.interval_max_s >= cfg.s1.interval_min_s,
            "s1.interval_max_s: must be >= interval_min_s");
    require(cfg.s2.p_false_positive >= 0.0 && cfg.s2.p_false_positive <= 1.0,
            "s2.p_false_positive: must lie in [0, 1]");
    require(cfg.s2.p_false_negative >= 0.0 && cfg.s2.p_false_negative <= 1.0,
            "s2.p_false_negative: must lie in [0, 1]");
    require(cfg.s2.recall_watchdog_slots >= 1, "s2.recall_watchdog_slots: must be >= 1");
    require(cfg.s3.quantization_m > 0.0, "s3.quantization_m: must be > 0");
    require(cfg.s3.proc_delay_s >= 0.0, "s3.proc_delay_s: must be >= 0");
    require(cfg.s3.distance_noise_std_m >= 0.0, "s3.distance_noise_std_m: must be >= 0");
    require(cfg.coverage.resolution_m > 0.0, "coverage.resolution_m: must be > 0");
    require(cfg.energy.bits_per_tx > 0.0, "energy.bits_per_tx: must be > 0");
    require(cfg.energy.bandwidth_hz > 0.0, "energy.bandwidth_hz: must be > 0");
    require(cfg.energy.noise_psd_w_per_hz > 0.0, "energy.noise_psd_w_per_hz: must be > 0");
    require(cfg.trace.stride >= 1, "trace.stride: must be >= 1");
    if (cfg.thresholds.coverage_time_min.has_value()) {
        require(*cfg.thresholds.coverage_time_min > 0.0,
                "thresholds.coverage_time_min: must be > 0");
    }
    if (cfg.thresholds.violation_pct.has_value()) {
        require(*cfg.thresholds.violation_pct >= 0.0,
                "thresholds.violation_pct: must be >= 0");
    }
    if (cfg.scheme == SchemeId::S3 && cfg.s3.mode == S3Mode::Explicit) {
        const auto& p = cfg.s3.anchors.pos;
        double cross = (p[1].x - p[0].x) * (p[2].y - p[0].y) -
                       (p[1].y - p[0].y) * (p[2].x - p[0].x);
        double span = (std::abs(p[1].x - p[0].x) + std::abs(p[1].y - p[0].y)) *
                      (std::abs(p[2].x - p[0].x) + std::abs(p[2].y - p[0].y));
        require(std::abs(cross) > 1e-12 * span, "s3.anchors: anchors must not be collinear");
    }
    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
}

nlohmann::json config_to_json(const SimConfig& cfg) {
    json j;
    j["scheme"] = to_string(cfg.scheme);
    j["seed"] = cfg.seed;
    j["horizon_slots"] = cfg.horizon_slots;
    j["slot_seconds"] = cfg.slot_seconds;
    j["replications"] = cfg.replications;
    j["arena"] = {{"width_m", cfg.arena.width},
                  {"height_m", cfg.arena.height},
                  {"rows", cfg.arena.rows},
                  {"cols", cfg.arena.cols}};
    j["walk"] = {{"step_len_m", cfg.walk.step_len_m},
                 {"arrival_eps_m", cfg.walk.arrival_eps_m}};
    j["s1"] = {{"interval_min_s", cfg.s1.interval_min_s},
               {"interval_max_s", cfg.s1.interval_max_s}};
    j["s2"] = {{"p_false_positive", cfg.s2.p_false_positive},
               {"p_false_negative", cfg.s2.p_false_negative},
               {"recall_watchdog_slots", cfg.s2.recall_watchdog_slots}};
    j["s3"] = {{"mode", to_string(cfg.s3.mode)},
               {"quantization_m", cfg.s3.quantization_m},
               {"proc_delay_s", cfg.s3.proc_delay_s},
               {"anchors",
                {{cfg.s3.anchors.pos[0].x, cfg.s3.anchors.pos[0].y},
                 {cfg.s3.anchors.pos[1].x, cfg.s3.anchors.pos[1].y},
                 {cfg.s3.anchors.pos[2].x, cfg.s3.anchors.pos[2].y}}},
               {"distance_noise_std_m", cfg.s3.distance_noise_std_m},
               {"command_reentered", cfg.s3.command_reentered}};
    j["coverage"] = {{"resolution_m", cfg.coverage.resolution_m}};
    j["energy"] = {{"bits_per_tx", cfg.energy.bits_per_tx},
                   {"bandwidth_hz", cfg.energy.bandwidth_hz},
                   {"noise_psd_w_per_hz", cfg.energy.noise_psd_w_per_hz}};
    j["thresholds"] = {
        {"coverage_time_min",
         cfg.thresholds.coverage_time_min.has_value()
             ? json(*cfg.thresholds.coverage_time_min)
             : json(nullptr)},
        {"violation_pct", cfg.thresholds.violation_pct.has_value()
                              ? json(*cfg.thresholds.violation_pct)
                              : json(nullptr)}};
    j["trace"] = {{"enabled", cfg.trace.enabled}, {"stride", cfg.trace.stride}};
    return j;
}

std::string to_string(S3Mode mode) {
    return mode == S3Mode::Abstract ? "abstract" : "explicit";
}

} // namespace covsim

#pragma once

#include "covsim/config.hpp"
#include "covsim/harness.hpp"
#include "covsim/metrics.hpp"
#include "covsim/simulation.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace covsim {

/// Shortest decimal form that parses back to the same double. Keeps every
/// text output byte-identical across runs without printing 17 digits
/// everywhere.
std::string format_double(double v);

nlohmann::json report_to_json(const MetricsReport& r);
nlohmann::json pooled_to_json(const PooledReport& p);

/// summary.json for a single run.
void write_run_summary(const std::string& path, const SimConfig& cfg,
                       const MetricsReport& r);

/// summary.json for a replicated run.
void write_replicate_summary(const std::string& path, const SimConfig& cfg,
                             const PooledReport& p);

/// summary.json for a calibration.
void write_calibration_summary(const std::string& path, const SimConfig& cfg,
                               const CalibrationResult& res);

/// Per-drone metrics table. With more than one report, rows carry the
/// replication index.
void write_metrics_csv(const std::string& path, const std::vector<MetricsReport>& reps);

/// Sampled trajectory of one drone: slot,t_seconds,x_m,y_m,mode,inside_flag.
void write_path_csv(const std::string& path, const std::vector<PathSample>& samples);

/// One row per swept configuration.
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

} // namespace covsim

#pragma once

#include "covsim/config.hpp"
#include "covsim/metrics.hpp"
#include "covsim/simulation.hpp"

#include <string>
#include <vector>

namespace covsim {

/// Runs n independent replications (replication indices 0..n-1, each with
/// its own derived streams) and pools the results. Replications run in
/// parallel; results are merged in replication order, so the output is
/// identical to a serial run. replicate(cfg, 1) reproduces run_simulation
/// exactly.
PooledReport replicate(const SimConfig& cfg, int n);

struct CalibrationProbe {
    double step_len_m = 0.0;
    double event_rate_per_s = 0.0;
};

struct CalibrationResult {
    double step_len_m = 0.0;
    double event_rate_per_s = 0.0;
    double target_rate_per_s = 0.0;
    int evaluations = 0;
    std::vector<CalibrationProbe> probes;
};

/// Raised when no step length in the searched bracket reaches the target;
/// carries the achievable range for the message.
class CalibrationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Finds the walk step length at which the event scheme's crossing-event
/// rate meets the target within rel_tol, by bisection on step length.
/// Every candidate is evaluated with the same seed so the objective is a
/// deterministic, monotone function of step length and the result is
/// reproducible. The config must select the event scheme; target must be
/// positive (ConfigError otherwise).
CalibrationResult calibrate_event_rate(SimConfig cfg, double target_rate_per_s,
                                       double rel_tol = 0.05);

struct SweepRow {
    SimConfig cfg;
    bool ok = false;
    std::string error;   // when !ok
    PooledReport pooled; // when ok
};

/// Runs each configuration (with its configured replication count) and
/// collects one row per config. A failing config yields an error row, not
/// an aborted sweep.
std::vector<SweepRow> sweep(const std::vector<SimConfig>& configs);

} // namespace covsim

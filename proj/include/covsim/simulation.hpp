#pragma once

#include "covsim/config.hpp"
#include "covsim/dynamics.hpp"
#include "covsim/metrics.hpp"

#include <cstdint>
#include <vector>

namespace covsim {

/// One trace row per sampled slot per drone.
struct PathSample {
    std::int64_t slot = 0;
    double t_seconds = 0.0;
    double x_m = 0.0;
    double y_m = 0.0;
    MotionMode mode = MotionMode::Walking;
    bool inside = false;
};

struct RunArtifacts {
    MetricsReport report;
    std::vector<std::vector<PathSample>> paths; // per drone; empty unless tracing
};

/// Runs one replication of the configured scenario. Fully deterministic in
/// (config, seed, replication): every random consumer draws from its own
/// stream keyed by those three, and slot timestamps are computed as
/// (k+1) * slot_seconds, never accumulated. replication 0 is the plain
/// single run for the seed.
///
/// Per-slot order: recall commands issued in slot k-1 take effect, every
/// drone moves one step, the sensing side observes the post-move state,
/// the channel delivers, the decision maker updates and issues commands,
/// and the metrics record the post-move state.
RunArtifacts run_simulation(const SimConfig& cfg, std::uint64_t replication = 0);

} // namespace covsim

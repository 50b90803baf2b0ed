#pragma once

#include "covsim/geometry.hpp"
#include "covsim/rng.hpp"
#include "covsim/semantics.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace covsim {

/// One TDMA distance measurement: anchor -> decision maker report about
/// one drone, taken in one slot.
struct DistanceReport {
    int anchor_id = 0;
    int drone_id = 0;
    double distance_m = 0.0;
};

/// What the decision maker receives in one slot.
struct ChannelObservation {
    std::int64_t slot = 0;
    std::vector<CrossingEvent> events;
    std::optional<DistanceReport> report;
    bool silent() const { return events.empty() && !report.has_value(); }
};

struct SfcChannelParams {
    double p_false_positive = 0.0; // per-slot spurious-event probability
    double p_false_negative = 0.0; // per-event drop probability
};

/// Event channel built on collision-proof simultaneous signaling: any
/// number of same-slot events arrive unharmed. Imperfections:
///   - each true event is dropped independently with p_false_negative;
///   - with p_false_positive per slot one spurious event appears, for a
///     uniformly chosen drone, in the direction opposite that drone's
///     current estimated flag (a same-direction phantom would be absorbed
///     by the estimator, so the opposite direction is the harmful case).
/// Draw order per slot is fixed: one drop draw per true event, then one
/// spurious draw (plus drone pick if it fires), keeping streams stable.
ChannelObservation sfc_deliver(const TransmitDecision& d, const SemanticState& estimate,
                               const SfcChannelParams& params, std::int64_t slot,
                               RandomStream& rng);

/// Time-division schedule for the positioning scheme: slot k belongs to
/// (anchor m / n_drones, drone m % n_drones) with m = k mod (3 * n_drones).
/// Cycle length 27 for the default nine-drone swarm.
std::pair<int, int> tdma_slot(std::int64_t k, int n_drones = 9);

/// Fixed ranging anchors. Trilateration requires them non-collinear.
struct AnchorSet {
    std::array<Vec2, 3> pos{Vec2{0.0, 0.0}, Vec2{60.0, 0.0}, Vec2{0.0, 60.0}};
};

/// One ranging measurement: true distance plus zero-mean gaussian noise,
/// clamped at zero (a distance cannot be negative).
double measure_distance(Vec2 anchor, Vec2 drone, double noise_std_m, RandomStream& rng);

/// Exact position from three anchor distances. Subtracting the circle
/// equations pairwise leaves a 2x2 linear system solved by Cramer's rule.
/// Throws std::invalid_argument("degenerate anchor geometry") when the
/// anchors are (numerically) collinear.
Vec2 trilaterate(const AnchorSet& anchors, const std::array<double, 3>& dist);

/// Detection delay of the positioning scheme's abstract model: uniform on
/// [3*T_k, 27*T_k] (one to three TDMA visits under the default swarm)
/// plus a fixed processing delay.
double detection_delay_sample(double T_k, double proc_delay_s, RandomStream& rng);

/// Error-free recall broadcast: queues a mode change that takes effect at
/// the start of the next slot. Energy accounting is the caller's (the
/// ledger counts one command per call).
void broadcast_command(int drone_id, std::vector<int>& pending_commands);

} // namespace covsim

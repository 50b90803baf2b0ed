#pragma once

#include "covsim/dynamics.hpp"
#include "covsim/geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace covsim {

enum class SchemeId { S1, S2, S3 };

/// Quantized position on a square grid of pitch q (floor convention).
struct GridCoord {
    std::int64_t ix = 0;
    std::int64_t iy = 0;
};

inline bool operator==(GridCoord a, GridCoord b) { return a.ix == b.ix && a.iy == b.iy; }
inline bool operator!=(GridCoord a, GridCoord b) { return !(a == b); }

/// The semantic content each scheme extracts from the physical state.
///   S1: nothing (the decision maker is blind).
///   S2: one inside-own-subarea flag per drone.
///   S3: one quantized position per drone.
struct SemanticState {
    SchemeId scheme = SchemeId::S1;
    std::vector<char> inside;     // S2 only, 1 = inside
    std::vector<GridCoord> qpos;  // S3 only
};

bool operator==(const SemanticState& a, const SemanticState& b);
inline bool operator!=(const SemanticState& a, const SemanticState& b) { return !(a == b); }

/// Maps drone truth to the scheme's semantic state. For S3 the
/// quantization pitch q must be positive (throws std::invalid_argument).
SemanticState map_semantic(SchemeId scheme, std::span<const DroneState> drones,
                           const Arena& arena, double q = 0.0);

enum class CrossDir { Out, In };

/// One border-crossing event: drone crossed its own subarea boundary in
/// the given direction during the last slot.
struct CrossingEvent {
    int drone_id = 0;
    CrossDir dir = CrossDir::Out;
};

inline bool operator==(CrossingEvent a, CrossingEvent b) {
    return a.drone_id == b.drone_id && a.dir == b.dir;
}

/// What the sensing side puts on the air in one slot. Silence (no events)
/// costs nothing and is itself informative under the event-triggered
/// design: it means "nothing changed".
struct TransmitDecision {
    std::vector<CrossingEvent> events;
    bool silent() const { return events.empty(); }
};

/// Event-triggered transmit policy: one event per drone whose inside flag
/// changed between prev and cur; silence otherwise. Both states must be
/// S2 states over the same number of drones (throws std::invalid_argument).
TransmitDecision transmit_policy_s2(const SemanticState& cur, const SemanticState& prev);

/// Number of transmissions this slot (0 or 1 per drone per slot under the
/// change-triggered policy; the decision as a whole occupies the channel
/// iff it is non-silent).
int theta(const TransmitDecision& d);

/// Hold-last estimator: silence keeps the previous estimate; a crossing
/// event flips the named drone's flag to the event's direction. prev must
/// be an S2 state and every event's drone id must be in range.
SemanticState estimate_hold(const SemanticState& prev, std::span<const CrossingEvent> events);

} // namespace covsim

#pragma once

#include "covsim/geometry.hpp"
#include "covsim/rng.hpp"

namespace covsim {

enum class MotionMode { Walking, Returning };

/// Kinematic state of one drone. home is always the center of the
/// assigned cell; mode changes only Walking -> Returning (on a recall
/// command) and Returning -> Walking (on arrival at home).
struct DroneState {
    int id = 0;
    CellId assigned_cell{};
    Vec2 home{};
    Vec2 pos{};
    MotionMode mode = MotionMode::Walking;
};

struct WalkParams {
    double step_len_m = 0.5;
    double arrival_eps_m = 0.0;
};

/// Drone i parked at the center of its assigned cell, Walking.
DroneState make_drone(int drone_id, const Arena& arena);

/// One slot of unconstrained random walk: a step of exactly step_len_m in
/// the given heading (radians). The walk ignores all boundaries; leaving
/// the cell or the arena is legal and is what the border monitoring is
/// for. Throws std::logic_error unless the drone is Walking.
DroneState step_walk(const DroneState& d, const WalkParams& p, double heading_rad);

/// Same, drawing the heading uniformly from [0, 2*pi).
DroneState step_walk(const DroneState& d, const WalkParams& p, RandomStream& rng);

/// Recall command takes effect: Walking -> Returning. Position is
/// unchanged. Commanding a Returning drone is a no-op.
DroneState command_return(const DroneState& d);

/// One slot of straight-line return: moves min(step_len_m, |home - pos|)
/// toward home; if the remaining distance after the move is within
/// arrival_eps_m (plus a sub-nanometer rounding guard) the drone snaps to
/// home and resumes Walking. A drone at distance D reaches home in
/// exactly ceil(D / step_len_m) slots when arrival_eps_m = 0, provided
/// D / step_len_m is not within ~1e-9 of an integer from above. Throws
/// std::logic_error unless the drone is Returning.
DroneState step_return(const DroneState& d, const WalkParams& p);

} // namespace covsim

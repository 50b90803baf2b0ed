#include "covsim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace covsim {

DroneState make_drone(int drone_id, const Arena& arena) {
    CellId cell = cell_for_drone(drone_id, arena);
    Vec2 c = cell_center(cell, arena);
    return DroneState{drone_id, cell, c, c, MotionMode::Walking};
}

DroneState step_walk(const DroneState& d, const WalkParams& p, double heading_rad) {
    if (d.mode != MotionMode::Walking) {
        throw std::logic_error("step_walk: drone is not Walking");
    }
    DroneState out = d;
    out.pos.x += p.step_len_m * std::cos(heading_rad);
    out.pos.y += p.step_len_m * std::sin(heading_rad);
    return out;
}

DroneState step_walk(const DroneState& d, const WalkParams& p, RandomStream& rng) {
    return step_walk(d, p, rng.angle());
}

DroneState command_return(const DroneState& d) {
    DroneState out = d;
    out.mode = MotionMode::Returning;
    return out;
}

DroneState step_return(const DroneState& d, const WalkParams& p) {
    if (d.mode != MotionMode::Returning) {
        throw std::logic_error("step_return: drone is not Returning");
    }
    DroneState out = d;
    double dist = distance(d.home, d.pos);
    double move = std::min(p.step_len_m, dist);
    // The sub-nanometer guard absorbs rounding from earlier position
    // updates so a distance of exactly k steps arrives on the k-th slot.
    if (dist - move <= p.arrival_eps_m + 1e-9 * p.step_len_m) {
        out.pos = d.home;
        out.mode = MotionMode::Walking;
        return out;
    }
    out.pos = d.pos + (d.home - d.pos) * (move / dist);
    return out;
}

} // namespace covsim

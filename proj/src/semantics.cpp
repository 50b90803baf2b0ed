#include "covsim/semantics.hpp"

#include <cmath>
#include <stdexcept>

namespace covsim {

bool operator==(const SemanticState& a, const SemanticState& b) {
    return a.scheme == b.scheme && a.inside == b.inside && a.qpos == b.qpos;
}

SemanticState map_semantic(SchemeId scheme, std::span<const DroneState> drones,
                           const Arena& arena, double q) {
    SemanticState s;
    s.scheme = scheme;
    switch (scheme) {
    case SchemeId::S1:
        break; // blind: no semantic content
    case SchemeId::S2:
        s.inside.reserve(drones.size());
        for (const DroneState& d : drones) {
            s.inside.push_back(contains(d.assigned_cell, d.pos, arena) ? 1 : 0);
        }
        break;
    case SchemeId::S3:
        if (!(q > 0.0)) {
            throw std::invalid_argument("map_semantic: quantization pitch must be > 0");
        }
        s.qpos.reserve(drones.size());
        for (const DroneState& d : drones) {
            s.qpos.push_back(GridCoord{
                static_cast<std::int64_t>(std::floor(d.pos.x / q)),
                static_cast<std::int64_t>(std::floor(d.pos.y / q)),
            });
        }
        break;
    }
    return s;
}

TransmitDecision transmit_policy_s2(const SemanticState& cur, const SemanticState& prev) {
    if (cur.scheme != SchemeId::S2 || prev.scheme != SchemeId::S2) {
        throw std::invalid_argument("transmit_policy_s2: states are not S2 states");
    }
    if (cur.inside.size() != prev.inside.size()) {
        throw std::invalid_argument("transmit_policy_s2: state sizes differ");
    }
    TransmitDecision d;
    for (std::size_t i = 0; i < cur.inside.size(); ++i) {
        if (cur.inside[i] != prev.inside[i]) {
            d.events.push_back(CrossingEvent{
                static_cast<int>(i),
                cur.inside[i] ? CrossDir::In : CrossDir::Out,
            });
        }
    }
    return d;
}

int theta(const TransmitDecision& d) {
    return d.silent() ? 0 : 1;
}

SemanticState estimate_hold(const SemanticState& prev, std::span<const CrossingEvent> events) {
    if (prev.scheme != SchemeId::S2) {
        throw std::invalid_argument("estimate_hold: estimate is not an S2 state");
    }
    SemanticState next = prev;
    for (const CrossingEvent& e : events) {
        if (e.drone_id < 0 || static_cast<std::size_t>(e.drone_id) >= next.inside.size()) {
            throw std::invalid_argument("estimate_hold: event drone id out of range");
        }
        next.inside[static_cast<std::size_t>(e.drone_id)] = (e.dir == CrossDir::In) ? 1 : 0;
    }
    return next;
}

} // namespace covsim

#include "covsim/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace covsim {

ChannelObservation sfc_deliver(const TransmitDecision& d, const SemanticState& estimate,
                               const SfcChannelParams& params, std::int64_t slot,
                               RandomStream& rng) {
    if (estimate.scheme != SchemeId::S2) {
        throw std::invalid_argument("sfc_deliver: estimate is not an S2 state");
    }
    if (params.p_false_positive < 0.0 || params.p_false_positive > 1.0 ||
        params.p_false_negative < 0.0 || params.p_false_negative > 1.0) {
        throw std::invalid_argument("sfc_deliver: probabilities must lie in [0,1]");
    }
    ChannelObservation obs;
    obs.slot = slot;
    for (const CrossingEvent& e : d.events) {
        if (!rng.bernoulli(params.p_false_negative)) {
            obs.events.push_back(e);
        }
    }
    if (rng.bernoulli(params.p_false_positive) && !estimate.inside.empty()) {
        int j = rng.uniform_int(static_cast<int>(estimate.inside.size()));
        obs.events.push_back(CrossingEvent{
            j,
            estimate.inside[static_cast<std::size_t>(j)] ? CrossDir::Out : CrossDir::In,
        });
    }
    return obs;
}

std::pair<int, int> tdma_slot(std::int64_t k, int n_drones) {
    if (k < 0 || n_drones <= 0) {
        throw std::invalid_argument("tdma_slot: slot and swarm size must be non-negative/positive");
    }
    int m = static_cast<int>(k % (3 * static_cast<std::int64_t>(n_drones)));
    return {m / n_drones, m % n_drones};
}

double measure_distance(Vec2 anchor, Vec2 drone, double noise_std_m, RandomStream& rng) {
    if (noise_std_m < 0.0) {
        throw std::invalid_argument("measure_distance: noise stddev must be >= 0");
    }
    double d = distance(anchor, drone);
    if (noise_std_m > 0.0) {
        d += rng.gaussian(0.0, noise_std_m);
    }
    return std::max(d, 0.0);
}

Vec2 trilaterate(const AnchorSet& anchors, const std::array<double, 3>& dist) {
    const Vec2 p1 = anchors.pos[0];
    const Vec2 p2 = anchors.pos[1];
    const Vec2 p3 = anchors.pos[2];
    // (|x-p1|^2 = d1^2) minus the p2 and p3 circle equations:
    const double a11 = 2.0 * (p2.x - p1.x);
    const double a12 = 2.0 * (p2.y - p1.y);
    const double a21 = 2.0 * (p3.x - p1.x);
    const double a22 = 2.0 * (p3.y - p1.y);
    const double det = a11 * a22 - a12 * a21;
    // det = 8 * signed area of the anchor triangle; collinear anchors give 0.
    const double scale = (std::abs(a11) + std::abs(a12)) * (std::abs(a21) + std::abs(a22));
    if (std::abs(det) <= 1e-12 * scale) {
        throw std::invalid_argument("degenerate anchor geometry");
    }
    const double sq1 = p1.x * p1.x + p1.y * p1.y;
    const double b1 = dist[0] * dist[0] - dist[1] * dist[1] +
                      (p2.x * p2.x + p2.y * p2.y) - sq1;
    const double b2 = dist[0] * dist[0] - dist[2] * dist[2] +
                      (p3.x * p3.x + p3.y * p3.y) - sq1;
    return {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a21 * b1) / det};
}

double detection_delay_sample(double T_k, double proc_delay_s, RandomStream& rng) {
    if (!(T_k > 0.0) || proc_delay_s < 0.0) {
        throw std::invalid_argument("detection_delay_sample: T_k must be > 0, delay >= 0");
    }
    return rng.uniform(3.0 * T_k, 27.0 * T_k) + proc_delay_s;
}

void broadcast_command(int drone_id, std::vector<int>& pending_commands) {
    pending_commands.push_back(drone_id);
}

} // namespace covsim

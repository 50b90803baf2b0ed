#include "covsim/controller.hpp"

#include <algorithm>
#include <stdexcept>

namespace covsim {

ControllerState make_controller(SchemeId scheme, int n_drones, const ControllerConfig& cfg,
                                std::span<RandomStream> s1_streams) {
    if (n_drones <= 0) {
        throw std::invalid_argument("make_controller: swarm must be non-empty");
    }
    ControllerState st;
    st.scheme = scheme;
    switch (scheme) {
    case SchemeId::S1:
        if (s1_streams.size() != static_cast<std::size_t>(n_drones)) {
            throw std::invalid_argument("make_controller: one timer stream per drone required");
        }
        st.deadline_s.reserve(static_cast<std::size_t>(n_drones));
        for (int i = 0; i < n_drones; ++i) {
            st.deadline_s.push_back(
                s1_streams[static_cast<std::size_t>(i)].uniform(cfg.interval_min_s,
                                                                cfg.interval_max_s));
        }
        break;
    case SchemeId::S2:
        st.estimate.scheme = SchemeId::S2;
        st.estimate.inside.assign(static_cast<std::size_t>(n_drones), 1);
        st.watchdog_s.assign(static_cast<std::size_t>(n_drones), -1.0);
        break;
    case SchemeId::S3:
        st.prev_inside.assign(static_cast<std::size_t>(n_drones), 1);
        break;
    }
    return st;
}

std::vector<int> s1_policy(ControllerState& st, double now_s, const ControllerConfig& cfg,
                           std::span<RandomStream> streams) {
    if (st.scheme != SchemeId::S1) {
        throw std::logic_error("s1_policy: controller is not in blind mode");
    }
    if (streams.size() != st.deadline_s.size()) {
        throw std::invalid_argument("s1_policy: one timer stream per drone required");
    }
    std::vector<int> commands;
    for (std::size_t i = 0; i < st.deadline_s.size(); ++i) {
        if (st.deadline_s[i] <= now_s) {
            commands.push_back(static_cast<int>(i));
            // Renew from the old deadline: issuance is slot-quantized but
            // the renewal process is not, keeping the exact mean rate.
            do {
                st.deadline_s[i] += streams[i].uniform(cfg.interval_min_s, cfg.interval_max_s);
            } while (st.deadline_s[i] <= now_s);
        }
    }
    return commands;
}

std::vector<int> s2_policy(ControllerState& st, const ChannelObservation& obs,
                           double now_s, const ControllerConfig& cfg) {
    if (st.scheme != SchemeId::S2) {
        throw std::logic_error("s2_policy: controller is not in event mode");
    }
    std::vector<char> before = st.estimate.inside;
    st.estimate = estimate_hold(st.estimate, obs.events);
    std::vector<int> commands;
    for (std::size_t i = 0; i < st.estimate.inside.size(); ++i) {
        if (before[i] && !st.estimate.inside[i]) {
            commands.push_back(static_cast<int>(i));
            st.watchdog_s[i] = now_s + cfg.recall_watchdog_slots * cfg.T_k;
        } else if (!before[i] && st.estimate.inside[i]) {
            st.watchdog_s[i] = -1.0;
        }
    }
    for (std::size_t i = 0; i < st.watchdog_s.size(); ++i) {
        if (st.watchdog_s[i] >= 0.0 && now_s >= st.watchdog_s[i]) {
            if (!st.estimate.inside[i]) {
                st.estimate.inside[i] = 1; // unconfirmed exit: deemed spurious
            }
            st.watchdog_s[i] = -1.0;
        }
    }
    return commands;
}

namespace {

// Insert keeping fire-time order (ties keep insertion order).
void insert_pending(std::vector<PendingDetection>& pending, PendingDetection p) {
    auto it = std::upper_bound(pending.begin(), pending.end(), p,
                               [](const PendingDetection& a, const PendingDetection& b) {
                                   return a.fire_time_s < b.fire_time_s;
                               });
    pending.insert(it, p);
}

void erase_pending_for(std::vector<PendingDetection>& pending, int drone_id) {
    std::erase_if(pending, [drone_id](const PendingDetection& p) {
        return p.drone_id == drone_id;
    });
}

} // namespace

std::vector<int> s3_policy(ControllerState& st, std::span<const DroneState> drones,
                           const Arena& arena, double now_s, const ControllerConfig& cfg,
                           RandomStream& delay_stream) {
    if (st.scheme != SchemeId::S3) {
        throw std::logic_error("s3_policy: controller is not in positioning mode");
    }
    if (drones.size() != st.prev_inside.size()) {
        throw std::invalid_argument("s3_policy: swarm size changed");
    }
    for (std::size_t i = 0; i < drones.size(); ++i) {
        bool inside = contains(drones[i].assigned_cell, drones[i].pos, arena);
        if (st.prev_inside[i] && !inside) {
            insert_pending(st.pending,
                           PendingDetection{static_cast<int>(i),
                                            now_s + detection_delay_sample(
                                                        cfg.T_k, cfg.proc_delay_s, delay_stream)});
        } else if (!st.prev_inside[i] && inside && !cfg.command_reentered) {
            erase_pending_for(st.pending, static_cast<int>(i));
        }
        st.prev_inside[i] = inside ? 1 : 0;
    }
    std::vector<int> commands;
    while (!st.pending.empty() && st.pending.front().fire_time_s <= now_s) {
        PendingDetection p = st.pending.front();
        st.pending.erase(st.pending.begin());
        const DroneState& d = drones[static_cast<std::size_t>(p.drone_id)];
        bool outside = !contains(d.assigned_cell, d.pos, arena);
        if ((outside || cfg.command_reentered) && d.mode != MotionMode::Returning) {
            commands.push_back(p.drone_id);
        }
    }
    return commands;
}

ExplicitTracker::ExplicitTracker(int n_drones, const AnchorSet& anchors, const Arena& arena,
                                 const ControllerConfig& cfg)
    : anchors_(anchors), arena_(arena), cfg_(cfg),
      dist_(static_cast<std::size_t>(n_drones), {0.0, 0.0, 0.0}),
      have_(static_cast<std::size_t>(n_drones), {0, 0, 0}),
      est_(static_cast<std::size_t>(n_drones)),
      est_inside_(static_cast<std::size_t>(n_drones), 1) {
    if (n_drones <= 0) {
        throw std::invalid_argument("ExplicitTracker: swarm must be non-empty");
    }
}

std::vector<int> ExplicitTracker::update(const ChannelObservation& obs,
                                         std::span<const DroneState> drones, double now_s) {
    if (obs.report.has_value()) {
        const DistanceReport& r = *obs.report;
        if (r.drone_id < 0 || static_cast<std::size_t>(r.drone_id) >= dist_.size() ||
            r.anchor_id < 0 || r.anchor_id >= 3) {
            throw std::invalid_argument("ExplicitTracker: report ids out of range");
        }
        auto di = static_cast<std::size_t>(r.drone_id);
        dist_[di][static_cast<std::size_t>(r.anchor_id)] = r.distance_m;
        have_[di][static_cast<std::size_t>(r.anchor_id)] = 1;
        if (have_[di][0] && have_[di][1] && have_[di][2]) {
            Vec2 fix = trilaterate(anchors_, dist_[di]);
            est_[di] = fix;
            bool inside = contains(drones[di].assigned_cell, fix, arena_);
            if (est_inside_[di] && !inside) {
                insert_pending(pending_, PendingDetection{r.drone_id, now_s + cfg_.proc_delay_s});
            } else if (!est_inside_[di] && inside && !cfg_.command_reentered) {
                erase_pending_for(pending_, r.drone_id);
            }
            est_inside_[di] = inside ? 1 : 0;
        }
    }
    std::vector<int> commands;
    while (!pending_.empty() && pending_.front().fire_time_s <= now_s) {
        PendingDetection p = pending_.front();
        pending_.erase(pending_.begin());
        auto di = static_cast<std::size_t>(p.drone_id);
        if ((!est_inside_[di] || cfg_.command_reentered) &&
            drones[di].mode != MotionMode::Returning) {
            commands.push_back(p.drone_id);
        }
    }
    return commands;
}

std::optional<Vec2> ExplicitTracker::estimate(int drone_id) const {
    return est_.at(static_cast<std::size_t>(drone_id));
}

} // namespace covsim

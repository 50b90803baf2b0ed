#include "covsim/simulation.hpp"

#include "covsim/channels.hpp"
#include "covsim/controller.hpp"
#include "covsim/rng.hpp"
#include "covsim/semantics.hpp"

#include <cmath>
#include <memory>
#include <numeric>

namespace covsim {

namespace {

ControllerConfig controller_config(const SimConfig& cfg) {
    ControllerConfig cc;
    cc.interval_min_s = cfg.s1.interval_min_s;
    cc.interval_max_s = cfg.s1.interval_max_s;
    cc.recall_watchdog_slots = cfg.s2.recall_watchdog_slots;
    cc.T_k = cfg.slot_seconds;
    cc.proc_delay_s = cfg.s3.proc_delay_s;
    cc.command_reentered = cfg.s3.command_reentered;
    return cc;
}

} // namespace

RunArtifacts run_simulation(const SimConfig& cfg, std::uint64_t replication) {
    validate_config(cfg);
    const int n = cfg.n_drones();
    const double T_k = cfg.slot_seconds;
    const ControllerConfig cc = controller_config(cfg);

    // One named stream per random consumer.
    std::vector<RandomStream> walk_rng;
    std::vector<RandomStream> timer_rng;
    for (int i = 0; i < n; ++i) {
        walk_rng.emplace_back(derive_seed(cfg.seed, replication, "walk", i));
        timer_rng.emplace_back(derive_seed(cfg.seed, replication, "timer", i));
    }
    RandomStream sfc_rng(derive_seed(cfg.seed, replication, "sfc", 0));
    RandomStream delay_rng(derive_seed(cfg.seed, replication, "delay", 0));
    RandomStream noise_rng(derive_seed(cfg.seed, replication, "noise", 0));

    std::vector<DroneState> drones;
    std::vector<CoverageGrid> grids;
    std::vector<std::int64_t> outside_slots(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        drones.push_back(make_drone(i, cfg.arena));
        grids.emplace_back(drones.back().assigned_cell, cfg.arena, cfg.coverage.resolution_m);
    }

    ControllerState ctrl = make_controller(cfg.scheme, n, cc, timer_rng);
    SemanticState prev_semantic;
    if (cfg.scheme == SchemeId::S2) {
        prev_semantic = map_semantic(SchemeId::S2, drones, cfg.arena);
    }
    std::unique_ptr<ExplicitTracker> tracker;
    if (cfg.scheme == SchemeId::S3 && cfg.s3.mode == S3Mode::Explicit) {
        tracker = std::make_unique<ExplicitTracker>(n, cfg.s3.anchors, cfg.arena, cc);
    }

    EnergyLedger ledger(n);
    std::int64_t mismatch_slots = 0; // estimate vs truth, slot-wise
    std::vector<int> pending_commands;

    RunArtifacts out;
    if (cfg.trace.enabled) {
        out.paths.resize(static_cast<std::size_t>(n));
    }

    const WalkParams wp{cfg.walk.step_len_m, cfg.walk.arrival_eps_m};

    for (std::int64_t k = 0; k < cfg.horizon_slots; ++k) {
        // Commands from slot k-1 take effect at the slot boundary.
        for (int id : pending_commands) {
            auto& d = drones[static_cast<std::size_t>(id)];
            d = command_return(d);
        }
        pending_commands.clear();

        for (int i = 0; i < n; ++i) {
            auto& d = drones[static_cast<std::size_t>(i)];
            d = (d.mode == MotionMode::Walking)
                    ? step_walk(d, wp, walk_rng[static_cast<std::size_t>(i)])
                    : step_return(d, wp);
        }
        const double now = static_cast<double>(k + 1) * T_k;

        std::vector<int> commands;
        switch (cfg.scheme) {
        case SchemeId::S1:
            commands = s1_policy(ctrl, now, cc, timer_rng);
            break;
        case SchemeId::S2: {
            SemanticState cur = map_semantic(SchemeId::S2, drones, cfg.arena);
            TransmitDecision dec = transmit_policy_s2(cur, prev_semantic);
            for (const CrossingEvent& e : dec.events) {
                ++ledger.sensor_tx_count[static_cast<std::size_t>(e.drone_id)];
            }
            ChannelObservation obs =
                sfc_deliver(dec, ctrl.estimate, {cfg.s2.p_false_positive,
                                                 cfg.s2.p_false_negative},
                            k, sfc_rng);
            commands = s2_policy(ctrl, obs, now, cc);
            if (ctrl.estimate != cur) {
                ++mismatch_slots;
            }
            prev_semantic = std::move(cur);
            break;
        }
        case SchemeId::S3: {
            // The TDMA slot always carries one measurement.
            ++ledger.periodic_tx_count;
            if (tracker) {
                auto [anchor, drone] = tdma_slot(k, n);
                ChannelObservation obs;
                obs.slot = k;
                obs.report = DistanceReport{
                    anchor, drone,
                    measure_distance(cfg.s3.anchors.pos[static_cast<std::size_t>(anchor)],
                                     drones[static_cast<std::size_t>(drone)].pos,
                                     cfg.s3.distance_noise_std_m, noise_rng)};
                commands = tracker->update(obs, drones, now);
                // Slot-wise semantic mismatch: a missing fix or a fix whose
                // quantized cell lags the drone's true cell.
                bool mismatch = false;
                const double q = cfg.s3.quantization_m;
                for (int i = 0; i < n && !mismatch; ++i) {
                    auto e = tracker->estimate(i);
                    if (!e.has_value()) {
                        mismatch = true;
                        break;
                    }
                    const Vec2 p = drones[static_cast<std::size_t>(i)].pos;
                    mismatch = std::floor(e->x / q) != std::floor(p.x / q) ||
                               std::floor(e->y / q) != std::floor(p.y / q);
                }
                if (mismatch) {
                    ++mismatch_slots;
                }
            } else {
                commands = s3_policy(ctrl, drones, cfg.arena, now, cc, delay_rng);
            }
            break;
        }
        }
        for (int id : commands) {
            ++ledger.command_count[static_cast<std::size_t>(id)];
            broadcast_command(id, pending_commands);
        }

        const bool sample = cfg.trace.enabled && (k % cfg.trace.stride == 0);
        for (int i = 0; i < n; ++i) {
            const auto& d = drones[static_cast<std::size_t>(i)];
            const bool inside = contains(d.assigned_cell, d.pos, cfg.arena);
            if (!inside) {
                ++outside_slots[static_cast<std::size_t>(i)];
            }
            record_step(grids[static_cast<std::size_t>(i)], d, now);
            if (sample) {
                out.paths[static_cast<std::size_t>(i)].push_back(
                    PathSample{k, now, d.pos.x, d.pos.y, d.mode, inside});
            }
        }
    }

    ledger.elapsed_s = static_cast<double>(cfg.horizon_slots) * T_k;

    MetricsReport& r = out.report;
    r.scheme = cfg.scheme;
    r.seed = cfg.seed;
    r.replication = replication;
    r.slots = cfg.horizon_slots;
    r.T_k = T_k;
    r.elapsed_s = ledger.elapsed_s;
    r.command_count = ledger.command_count;
    r.sensor_tx_count = ledger.sensor_tx_count;
    r.periodic_tx_count = ledger.periodic_tx_count;
    r.e_t_per_s = energy_report(ledger);
    r.theta_rate_per_s = theta_rate(ledger, cfg.scheme, T_k, cfg.horizon_slots);

    for (int i = 0; i < n; ++i) {
        CoverageSummary cs = summarize_coverage(grids[static_cast<std::size_t>(i)],
                                                ledger.elapsed_s);
        r.v_time_min.push_back(cs.v_time_min);
        r.v_time_censored.push_back(cs.censored ? 1 : 0);
        r.epochs_completed.push_back(cs.epochs);
        r.v_violation_pct.push_back(
            100.0 * static_cast<double>(outside_slots[static_cast<std::size_t>(i)]) /
            static_cast<double>(cfg.horizon_slots));
        r.v_time_any_censored = r.v_time_any_censored || cs.censored;
    }
    auto mean = [](const std::vector<double>& v) {
        return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    };
    r.v_time_mean_min = mean(r.v_time_min);
    r.v_violation_mean_pct = mean(r.v_violation_pct);
    r.e_t_mean_per_s = mean(r.e_t_per_s);
    r.command_rate_per_s =
        static_cast<double>(std::accumulate(ledger.command_count.begin(),
                                            ledger.command_count.end(), std::int64_t{0})) /
        ledger.elapsed_s;
    if (cfg.scheme == SchemeId::S2 ||
        (cfg.scheme == SchemeId::S3 && cfg.s3.mode == S3Mode::Explicit)) {
        r.estimation_error =
            static_cast<double>(mismatch_slots) / static_cast<double>(cfg.horizon_slots);
    }
    if (cfg.thresholds.coverage_time_min.has_value()) {
        r.pass_time = r.v_time_mean_min < *cfg.thresholds.coverage_time_min;
    }
    if (cfg.thresholds.violation_pct.has_value()) {
        r.pass_violation = r.v_violation_mean_pct < *cfg.thresholds.violation_pct;
    }
    return out;
}

} // namespace covsim

#pragma once

#include "covsim/channels.hpp"
#include "covsim/dynamics.hpp"
#include "covsim/geometry.hpp"
#include "covsim/rng.hpp"
#include "covsim/semantics.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace covsim {

struct ControllerConfig {
    // Blind scheme: recall every U(interval_min, interval_max) seconds.
    double interval_min_s = 2.0;
    double interval_max_s = 5.0;
    // Event scheme: slots to wait for the entry event confirming a recall
    // before concluding the triggering exit event was spurious.
    int recall_watchdog_slots = 10;
    // Positioning scheme.
    double T_k = 0.1;
    double proc_delay_s = 0.0;
    bool command_reentered = false; // fire stale detections even after re-entry
};

/// A scheduled future recall from a delayed exit detection.
struct PendingDetection {
    int drone_id = 0;
    double fire_time_s = 0.0;
};

/// Mutable decision-maker state shared by the per-scheme policies. Only
/// the fields of the active scheme are populated.
struct ControllerState {
    SchemeId scheme = SchemeId::S1;
    std::vector<double> deadline_s;         // S1: next recall per drone
    SemanticState estimate;                 // S2: hold-last flag estimate
    std::vector<double> watchdog_s;         // S2: confirm deadline, <0 disarmed
    std::vector<char> prev_inside;          // S3: last observed truth flags
    std::vector<PendingDetection> pending;  // S3: scheduled recalls
};

/// Fresh controller at t = 0. For the blind scheme every timer gets an
/// initial U(interval_min, interval_max) draw from the matching stream;
/// the event scheme starts from the true initial flags (all drones start
/// at their cell centers, inside).
ControllerState make_controller(SchemeId scheme, int n_drones, const ControllerConfig& cfg,
                                std::span<RandomStream> s1_streams);

/// Blind periodic policy: recalls drone i whenever now reaches its
/// deadline, renewing the deadline by an independent U(interval_min,
/// interval_max) draw from that drone's stream. Renewal accumulates from
/// the previous deadline, not from the slot boundary, so the long-run
/// rate is exactly 2 / (interval_min + interval_max) per drone.
std::vector<int> s1_policy(ControllerState& st, double now_s, const ControllerConfig& cfg,
                           std::span<RandomStream> streams);

/// Event-triggered policy: folds the slot's received events into the
/// hold-last estimate and recalls every drone whose estimated flag made
/// an inside -> outside transition. Each recall arms a watchdog; an entry
/// event disarms it; expiry with the flag still "outside" reverts the
/// flag (the exit event is deemed spurious as no entry confirmed the
/// recall within the window). A genuinely recalled drone re-enters within
/// a few slots, so with a clean channel the watchdog never fires.
std::vector<int> s2_policy(ControllerState& st, const ChannelObservation& obs,
                           double now_s, const ControllerConfig& cfg);

/// Positioning-scheme policy, abstract detection model: a true exit
/// schedules a recall after U(3*T_k, 27*T_k) + proc_delay_s (the TDMA
/// revisit delay); a self re-entry before the scheduled time cancels it
/// (unless command_reentered). Due detections fire in schedule order and
/// recall the drone only if it is still outside and not already
/// Returning.
std::vector<int> s3_policy(ControllerState& st, std::span<const DroneState> drones,
                           const Arena& arena, double now_s, const ControllerConfig& cfg,
                           RandomStream& delay_stream);

/// Positioning-scheme decision maker, explicit pipeline: consumes one
/// TDMA distance report per slot, keeps the latest distance per
/// (drone, anchor), and recomputes the drone's position estimate by
/// trilateration whenever all three anchors have reported it. Exit /
/// re-entry is then judged on the estimated position exactly as the
/// abstract model judges truth, with proc_delay_s before the recall.
class ExplicitTracker {
  public:
    ExplicitTracker(int n_drones, const AnchorSet& anchors, const Arena& arena,
                    const ControllerConfig& cfg);

    /// Feeds one slot's report (if any) and returns the drones to recall.
    std::vector<int> update(const ChannelObservation& obs,
                            std::span<const DroneState> drones, double now_s);

    /// Latest position estimate, or nullopt before the first full fix.
    std::optional<Vec2> estimate(int drone_id) const;

  private:
    AnchorSet anchors_;
    Arena arena_;
    ControllerConfig cfg_;
    std::vector<std::array<double, 3>> dist_;
    std::vector<std::array<char, 3>> have_;
    std::vector<std::optional<Vec2>> est_;
    std::vector<char> est_inside_;
    std::vector<PendingDetection> pending_;
};

} // namespace covsim

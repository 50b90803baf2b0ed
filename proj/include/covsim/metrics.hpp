#pragma once

#include "covsim/dynamics.hpp"
#include "covsim/geometry.hpp"
#include "covsim/semantics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace covsim {

/// First-visit coverage of one drone's subarea at a fixed sensing
/// resolution. The subarea is tiled into res_m x res_m tiles; an epoch
/// completes when every tile has been visited at least once, then the
/// grid resets and the next epoch starts. Positions outside the subarea
/// mark nothing.
class CoverageGrid {
  public:
    CoverageGrid(CellId cell, const Arena& arena, double res_m);

    /// Marks the tile under pos (if inside the subarea) at time now_s and
    /// closes the epoch when this completes the grid.
    void record(Vec2 pos, double now_s);

    int tiles_total() const { return nx_ * ny_; }
    int tiles_visited() const { return visited_count_; }
    int epochs_completed() const { return static_cast<int>(epoch_durations_s_.size()); }
    const std::vector<double>& epoch_durations_s() const { return epoch_durations_s_; }

  private:
    double origin_x_, origin_y_;
    double width_, height_;
    double res_;
    int nx_, ny_;
    std::vector<char> visited_;
    int visited_count_ = 0;
    double epoch_start_s_ = 0.0;
    std::vector<double> epoch_durations_s_;
};

/// Marks the drone's current position in its coverage grid.
void record_step(CoverageGrid& grid, const DroneState& d, double now_s);

/// Mean completed-epoch duration in minutes. A run whose grid never
/// completed an epoch is right-censored at the elapsed time: the true
/// mean is at least the reported value. The trailing incomplete epoch of
/// a run with completed epochs is discarded.
struct CoverageSummary {
    double v_time_min = 0.0;
    bool censored = false;
    int epochs = 0;
};
CoverageSummary summarize_coverage(const CoverageGrid& grid, double elapsed_s);

/// Integer event counters from which every energy figure is derived.
/// Counting at the transmitter (before channel losses) makes the ledger
/// identity exact by construction: energy is spent on what was sent.
struct EnergyLedger {
    std::vector<std::int64_t> command_count;   // recall broadcasts per drone
    std::vector<std::int64_t> sensor_tx_count; // event transmissions per drone
    std::int64_t periodic_tx_count = 0;        // TDMA slots occupied (whole swarm)
    double elapsed_s = 0.0;

    explicit EnergyLedger(int n_drones = 0)
        : command_count(static_cast<std::size_t>(n_drones), 0),
          sensor_tx_count(static_cast<std::size_t>(n_drones), 0) {}
};

/// Normalized transmission-energy rate per subarea, in units of the
/// per-transmission energy quantum per second:
///   E_T(i) = (commands_i + sensor_tx_i) / elapsed + periodic / (n * elapsed).
std::vector<double> energy_report(const EnergyLedger& ledger);

/// Sensing-channel occupancy rate in transmissions per second. The blind
/// scheme never senses (identically 0); the event scheme counts crossing
/// events; the periodic scheme occupies every slot (exactly 1/T_k).
double theta_rate(const EnergyLedger& ledger, SchemeId scheme, double T_k,
                  std::int64_t slots);

/// Fraction of slots with the drone outside its subarea, in percent.
/// Throws std::invalid_argument on an empty trace.
double violation_rate_pct(std::span<const char> inside_trace);

/// Fraction of slots where the estimated semantic state differs from the
/// truth. Traces must be the same length (throws std::invalid_argument)
/// and non-empty.
double estimation_error_rate(std::span<const SemanticState> truth,
                             std::span<const SemanticState> estimate);

/// Minimum transmission energy for one message of `bits` bits in a slot
/// of T_k seconds over an AWGN channel of bandwidth bw_hz and noise power
/// spectral density n0_w_per_hz, at the Shannon limit:
///   snr = 2^(bits / (T_k * bw)) - 1,  E = snr * n0 * bw * T_k.
/// All arguments must be positive.
double shannon_min_energy_j(double bits, double T_k, double bw_hz, double n0_w_per_hz);

/// Per-run results. Optional fields are absent where the scheme does not
/// define them (estimation error for the blind scheme, for instance).
struct MetricsReport {
    SchemeId scheme = SchemeId::S1;
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
    std::int64_t slots = 0;
    double T_k = 0.0;
    double elapsed_s = 0.0;

    std::vector<double> v_time_min;       // per drone
    std::vector<char> v_time_censored;    // per drone
    std::vector<int> epochs_completed;    // per drone
    std::vector<double> v_violation_pct;  // per drone
    std::vector<double> e_t_per_s;        // per drone
    std::vector<std::int64_t> command_count;
    std::vector<std::int64_t> sensor_tx_count;
    std::int64_t periodic_tx_count = 0;

    double v_time_mean_min = 0.0;
    bool v_time_any_censored = false;
    double v_violation_mean_pct = 0.0;
    double e_t_mean_per_s = 0.0;
    double command_rate_per_s = 0.0; // whole swarm
    double theta_rate_per_s = 0.0;
    std::optional<double> estimation_error;

    std::optional<bool> pass_time;       // v_time_mean_min < threshold
    std::optional<bool> pass_violation;  // v_violation_mean_pct < threshold
};

/// Mean and standard error of one metric across replications.
struct Pooled {
    double mean = 0.0;
    double se = 0.0;
    int n = 0;
};

/// Replication-pooled results. Pooling is order-independent: reports are
/// combined in replication-index order regardless of arrival order.
struct PooledReport {
    std::vector<MetricsReport> reps;
    Pooled v_time_min;
    Pooled v_violation_pct;
    Pooled e_t_per_s;
    Pooled theta_rate_per_s;
    Pooled estimation_error; // n = 0 when undefined for the scheme
};

PooledReport pool_reports(std::vector<MetricsReport> reps);

std::string to_string(SchemeId scheme);
SchemeId scheme_from_string(const std::string& s);

} // namespace covsim

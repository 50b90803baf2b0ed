#include "covsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace covsim {

CoverageGrid::CoverageGrid(CellId cell, const Arena& arena, double res_m) {
    if (!(res_m > 0.0)) {
        throw std::invalid_argument("CoverageGrid: resolution must be > 0");
    }
    if (cell.row < 0 || cell.row >= arena.rows || cell.col < 0 || cell.col >= arena.cols) {
        throw std::invalid_argument("CoverageGrid: cell id out of range");
    }
    width_ = arena.cell_width();
    height_ = arena.cell_height();
    origin_x_ = cell.col * width_;
    origin_y_ = cell.row * height_;
    res_ = res_m;
    nx_ = std::max(1, static_cast<int>(std::ceil(width_ / res_m - 1e-9)));
    ny_ = std::max(1, static_cast<int>(std::ceil(height_ / res_m - 1e-9)));
    visited_.assign(static_cast<std::size_t>(nx_) * ny_, 0);
}

void CoverageGrid::record(Vec2 pos, double now_s) {
    double lx = pos.x - origin_x_;
    double ly = pos.y - origin_y_;
    if (!(lx >= 0.0 && lx <= width_ && ly >= 0.0 && ly <= height_)) {
        return;
    }
    int ix = std::min(static_cast<int>(lx / res_), nx_ - 1);
    int iy = std::min(static_cast<int>(ly / res_), ny_ - 1);
    char& tile = visited_[static_cast<std::size_t>(iy) * nx_ + ix];
    if (!tile) {
        tile = 1;
        if (++visited_count_ == tiles_total()) {
            epoch_durations_s_.push_back(now_s - epoch_start_s_);
            std::fill(visited_.begin(), visited_.end(), 0);
            visited_count_ = 0;
            epoch_start_s_ = now_s;
        }
    }
}

void record_step(CoverageGrid& grid, const DroneState& d, double now_s) {
    grid.record(d.pos, now_s);
}

CoverageSummary summarize_coverage(const CoverageGrid& grid, double elapsed_s) {
    CoverageSummary s;
    s.epochs = grid.epochs_completed();
    if (s.epochs == 0) {
        s.v_time_min = elapsed_s / 60.0;
        s.censored = true;
        return s;
    }
    const auto& dur = grid.epoch_durations_s();
    double total = std::accumulate(dur.begin(), dur.end(), 0.0);
    s.v_time_min = total / s.epochs / 60.0;
    return s;
}

std::vector<double> energy_report(const EnergyLedger& ledger) {
    if (!(ledger.elapsed_s > 0.0)) {
        throw std::invalid_argument("energy_report: elapsed time must be > 0");
    }
    if (ledger.command_count.size() != ledger.sensor_tx_count.size()) {
        throw std::invalid_argument("energy_report: counter sizes differ");
    }
    const double n = static_cast<double>(ledger.command_count.size());
    if (n == 0.0) {
        throw std::invalid_argument("energy_report: empty ledger");
    }
    std::vector<double> e;
    e.reserve(ledger.command_count.size());
    const double shared = static_cast<double>(ledger.periodic_tx_count) / (n * ledger.elapsed_s);
    for (std::size_t i = 0; i < ledger.command_count.size(); ++i) {
        double own = static_cast<double>(ledger.command_count[i] + ledger.sensor_tx_count[i]);
        e.push_back(own / ledger.elapsed_s + shared);
    }
    return e;
}

double theta_rate(const EnergyLedger& ledger, SchemeId scheme, double T_k,
                  std::int64_t slots) {
    if (!(T_k > 0.0) || slots <= 0) {
        throw std::invalid_argument("theta_rate: T_k and slots must be positive");
    }
    if (scheme != SchemeId::S1 && !(ledger.elapsed_s > 0.0)) {
        throw std::invalid_argument("theta_rate: elapsed time must be > 0");
    }
    switch (scheme) {
    case SchemeId::S1:
        return 0.0;
    case SchemeId::S2: {
        std::int64_t events = std::accumulate(ledger.sensor_tx_count.begin(),
                                              ledger.sensor_tx_count.end(),
                                              std::int64_t{0});
        return static_cast<double>(events) / ledger.elapsed_s;
    }
    case SchemeId::S3:
        // Every slot carries one measurement; occupancy 1 gives 1/T_k.
        if (ledger.periodic_tx_count == slots) {
            return 1.0 / T_k;
        }
        return static_cast<double>(ledger.periodic_tx_count) / ledger.elapsed_s;
    }
    throw std::logic_error("theta_rate: unknown scheme");
}

double violation_rate_pct(std::span<const char> inside_trace) {
    if (inside_trace.empty()) {
        throw std::invalid_argument("violation_rate_pct: empty trace");
    }
    std::int64_t outside = 0;
    for (char c : inside_trace) {
        outside += c ? 0 : 1;
    }
    return 100.0 * static_cast<double>(outside) / static_cast<double>(inside_trace.size());
}

double estimation_error_rate(std::span<const SemanticState> truth,
                             std::span<const SemanticState> estimate) {
    if (truth.size() != estimate.size()) {
        throw std::invalid_argument("estimation_error_rate: trace lengths differ");
    }
    if (truth.empty()) {
        throw std::invalid_argument("estimation_error_rate: empty traces");
    }
    std::int64_t mismatch = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        mismatch += (truth[i] == estimate[i]) ? 0 : 1;
    }
    return static_cast<double>(mismatch) / static_cast<double>(truth.size());
}

double shannon_min_energy_j(double bits, double T_k, double bw_hz, double n0_w_per_hz) {
    if (!(bits > 0.0) || !(T_k > 0.0) || !(bw_hz > 0.0) || !(n0_w_per_hz > 0.0)) {
        throw std::invalid_argument("shannon_min_energy_j: all arguments must be > 0");
    }
    double snr = std::exp2(bits / (T_k * bw_hz)) - 1.0;
    return snr * n0_w_per_hz * bw_hz * T_k;
}

namespace {

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

Pooled pool_metric(const std::vector<double>& samples) {
    Pooled p;
    p.n = static_cast<int>(samples.size());
    if (p.n == 0) return p;
    p.mean = mean_of(samples);
    if (p.n > 1) {
        double ss = 0.0;
        for (double s : samples) {
            ss += (s - p.mean) * (s - p.mean);
        }
        p.se = std::sqrt(ss / (p.n - 1)) / std::sqrt(static_cast<double>(p.n));
    }
    return p;
}

} // namespace

PooledReport pool_reports(std::vector<MetricsReport> reps) {
    if (reps.empty()) {
        throw std::invalid_argument("pool_reports: no replications");
    }
    std::sort(reps.begin(), reps.end(),
              [](const MetricsReport& a, const MetricsReport& b) {
                  return a.replication < b.replication;
              });
    PooledReport out;
    std::vector<double> vt, vv, et, th, ee;
    for (const MetricsReport& r : reps) {
        vt.push_back(r.v_time_mean_min);
        vv.push_back(r.v_violation_mean_pct);
        et.push_back(r.e_t_mean_per_s);
        th.push_back(r.theta_rate_per_s);
        if (r.estimation_error.has_value()) {
            ee.push_back(*r.estimation_error);
        }
    }
    out.v_time_min = pool_metric(vt);
    out.v_violation_pct = pool_metric(vv);
    out.e_t_per_s = pool_metric(et);
    out.theta_rate_per_s = pool_metric(th);
    out.estimation_error = pool_metric(ee);
    out.reps = std::move(reps);
    return out;
}

std::string to_string(SchemeId scheme) {
    switch (scheme) {
    case SchemeId::S1: return "s1";
    case SchemeId::S2: return "s2";
    case SchemeId::S3: return "s3";
    }
    throw std::logic_error("to_string: unknown scheme");
}

SchemeId scheme_from_string(const std::string& s) {
    if (s == "s1" || s == "S1") return SchemeId::S1;
    if (s == "s2" || s == "S2") return SchemeId::S2;
    if (s == "s3" || s == "S3") return SchemeId::S3;
    throw std::invalid_argument("unknown scheme: " + s);
}

} // namespace covsim

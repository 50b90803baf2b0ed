#include "covsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>

namespace covsim {

PooledReport replicate(const SimConfig& cfg, int n) {
    if (n < 1) {
        throw ConfigError({"replications: must be >= 1"});
    }
    validate_config(cfg);
    std::vector<std::future<MetricsReport>> futures;
    futures.reserve(static_cast<std::size_t>(n));
    for (int rep = 0; rep < n; ++rep) {
        futures.push_back(std::async(std::launch::async, [&cfg, rep]() {
            return run_simulation(cfg, static_cast<std::uint64_t>(rep)).report;
        }));
    }
    std::vector<MetricsReport> reps;
    reps.reserve(static_cast<std::size_t>(n));
    for (auto& f : futures) {
        reps.push_back(f.get()); // collected in replication order
    }
    return pool_reports(std::move(reps));
}

namespace {

double event_rate(SimConfig cfg, double step_len) {
    cfg.walk.step_len_m = step_len;
    cfg.trace.enabled = false;
    MetricsReport r = run_simulation(cfg, 0).report;
    std::int64_t events = std::accumulate(r.sensor_tx_count.begin(),
                                          r.sensor_tx_count.end(), std::int64_t{0});
    return static_cast<double>(events) / r.elapsed_s;
}

} // namespace

CalibrationResult calibrate_event_rate(SimConfig cfg, double target_rate_per_s,
                                       double rel_tol) {
    if (!(target_rate_per_s > 0.0)) {
        throw ConfigError({"calibration target: must be > 0"});
    }
    if (!(rel_tol > 0.0)) {
        throw ConfigError({"calibration tolerance: must be > 0"});
    }
    if (cfg.scheme != SchemeId::S2) {
        throw ConfigError({"scheme: calibration requires the event scheme (s2)"});
    }
    validate_config(cfg);

    CalibrationResult res;
    res.target_rate_per_s = target_rate_per_s;
    auto probe = [&](double step) {
        double rate = event_rate(cfg, step);
        ++res.evaluations;
        res.probes.push_back({step, rate});
        return rate;
    };
    auto within = [&](double rate) {
        return std::abs(rate - target_rate_per_s) <= rel_tol * target_rate_per_s;
    };
    auto finish = [&](double step, double rate) {
        res.step_len_m = step;
        res.event_rate_per_s = rate;
        return res;
    };

    // Bracket the target: the event rate grows with step length.
    double lo = 0.02, hi = 2.0;
    double r_lo = probe(lo);
    if (within(r_lo)) return finish(lo, r_lo);
    double r_hi = probe(hi);
    if (within(r_hi)) return finish(hi, r_hi);
    for (int i = 0; i < 6 && r_lo > target_rate_per_s && lo > 1e-4; ++i) {
        hi = lo;
        r_hi = r_lo;
        lo *= 0.25;
        r_lo = probe(lo);
        if (within(r_lo)) return finish(lo, r_lo);
    }
    for (int i = 0; i < 6 && r_hi < target_rate_per_s && hi < 512.0; ++i) {
        lo = hi;
        r_lo = r_hi;
        hi *= 4.0;
        r_hi = probe(hi);
        if (within(r_hi)) return finish(hi, r_hi);
    }
    if (!(r_lo <= target_rate_per_s && target_rate_per_s <= r_hi)) {
        std::ostringstream os;
        os << "calibration failed: target " << target_rate_per_s
           << " events/s is outside the achievable range [" << std::min(r_lo, r_hi)
           << ", " << std::max(r_lo, r_hi) << "] for step lengths [" << lo << ", " << hi
           << "] m";
        throw CalibrationError(os.str());
    }

    double best_step = lo, best_rate = r_lo;
    for (int i = 0; i < 48; ++i) {
        double mid = 0.5 * (lo + hi);
        double r_mid = probe(mid);
        if (std::abs(r_mid - target_rate_per_s) < std::abs(best_rate - target_rate_per_s)) {
            best_step = mid;
            best_rate = r_mid;
        }
        if (within(r_mid)) {
            return finish(mid, r_mid);
        }
        if (r_mid < target_rate_per_s) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    std::ostringstream os;
    os << "calibration failed: best step " << best_step << " m gives " << best_rate
       << " events/s, target " << target_rate_per_s << " (tolerance "
       << rel_tol * 100.0 << "%)";
    throw CalibrationError(os.str());
}

std::vector<SweepRow> sweep(const std::vector<SimConfig>& configs) {
    if (configs.empty()) {
        throw ConfigError({"sweep: at least one configuration required"});
    }
    std::vector<SweepRow> rows;
    rows.reserve(configs.size());
    for (const SimConfig& cfg : configs) {
        SweepRow row;
        row.cfg = cfg;
        try {
            row.pooled = replicate(cfg, cfg.replications);
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace covsim

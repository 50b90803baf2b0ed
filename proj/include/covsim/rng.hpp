#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace covsim {

/// Seed for a named random stream. Streams are keyed by
/// (master seed, replication index, label, per-entity index) so that every
/// consumer draws from its own engine: adding a consumer never perturbs the
/// draws of existing ones, and replications are mutually independent.
/// Replication 0 reproduces a plain single run with the same master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replication,
                          std::string_view label, std::uint64_t index);

/// Deterministic random stream with explicitly pinned draw algorithms.
/// Distribution code is written out here (not taken from <random>'s
/// distribution adaptors) because their output is implementation-defined;
/// byte-identical reproducibility across standard libraries depends on it.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1): top 53 bits of one engine draw.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi). Requires lo < hi.
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in {0, ..., n-1}. Requires n > 0.
    int uniform_int(int n) {
        return static_cast<int>(uniform01() * n);
    }

    /// Normal draw via Box-Muller (one draw consumes two uniforms).
    double gaussian(double mean, double stddev);

    bool bernoulli(double p) { return uniform01() < p; }

    /// Heading in [0, 2*pi).
    double angle() { return uniform(0.0, 6.283185307179586476925286766559); }

  private:
    std::mt19937_64 engine_;
};

} // namespace covsim

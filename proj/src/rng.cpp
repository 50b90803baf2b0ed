#include "covsim/rng.hpp"

#include <cmath>

namespace covsim {

namespace {

// FNV-1a over the label bytes; separates streams with distinct names.
std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// splitmix64 finalizer; decorrelates nearby inputs.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replication,
                          std::string_view label, std::uint64_t index) {
    std::uint64_t h = mix(master);
    h = mix(h ^ mix(replication));
    h = mix(h ^ fnv1a(label));
    h = mix(h ^ mix(index));
    return h;
}

double RandomStream::gaussian(double mean, double stddev) {
    double u1 = uniform01();
    double u2 = uniform01();
    // 1-u1 lies in (0,1], so the log is finite.
    double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    double theta = 6.283185307179586476925286766559 * u2;
    return mean + stddev * r * std::cos(theta);
}

} // namespace covsim

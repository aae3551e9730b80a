#pragma once

#include <cmath>
#include <cstdint>

namespace addperc {

// SplitMix64 output function.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based generator: the n-th draw of stream (seed, stream) is a pure
// function of (seed, stream, n), so per-instance streams do not depend on the
// order in which instances are sampled.  No libstdc++ distributions are used,
// which keeps output identical across standard libraries.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream)
        : key_(mix64(mix64(seed) ^ (stream * 0xda942042e4dd58b5ull))) {}

    uint64_t next() { return mix64(key_ ^ (ctr_++ * 0x9e3779b97f4a7c15ull)); }

    // Uniform on [0,1) with 53 random bits.
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Exponential with the given rate; rate > 0.
    double exponential(double rate) { return -std::log1p(-u01()) / rate; }

private:
    uint64_t key_;
    uint64_t ctr_ = 0;
};

}  // namespace addperc

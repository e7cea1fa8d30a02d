#pragma once

#include <cstdint>

namespace riscov {

// Deterministic, platform-independent RNG. Every distribution below is
// implemented from raw 64-bit draws so that a (seed, stream) pair yields the
// same realization on any conforming compiler.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) { reseed(seed); }
    Rng(std::uint64_t seed, std::uint64_t stream) { reseed_stream(seed, stream); }

    void reseed(std::uint64_t seed);
    // Derives an independent substream, e.g. one per Monte Carlo drop.
    void reseed_stream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    // Uniform on [0,1) with 53 significant bits.
    double uniform();
    // Uniform on [lo, hi).
    double uniform(double lo, double hi);
    // Exponential with the given rate (mean 1/rate).
    double exponential(double rate);
    // Exact Poisson sample; valid for any mean >= 0.
    int poisson(double mean);

  private:
    int poisson_knuth(double mean);
    int poisson_ptrs(double mean);

    std::uint64_t s_[4];
};

// SplitMix64 step; used for seeding and for hashing stream indices.
std::uint64_t splitmix64(std::uint64_t& state);

} // namespace riscov

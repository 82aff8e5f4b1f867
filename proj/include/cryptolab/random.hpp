#pragma once

#include <cstdint>
#include <random>

namespace cryptolab {

/// Seedable randomness source. Every random choice in the library goes through
/// one of these, so a fixed seed reproduces a whole session.
///
/// Uses mt19937_64 (whose output sequence is fixed by the standard) plus its own
/// rejection sampling, so results match across standard library vendors.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi], inclusive.
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

    bool operator==(const Rng&) const = default;

private:
    std::mt19937_64 engine_;
};

}  // namespace cryptolab

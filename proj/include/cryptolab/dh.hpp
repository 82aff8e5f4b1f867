#pragma once

#include <cstdint>
#include <string>

#include "cryptolab/random.hpp"
#include "cryptolab/work_counter.hpp"

namespace cryptolab {

enum class ParamMode {
    classroom,  // p <= 100 so every residue has a color slot 0..99
    demo,       // any prime below 2^31
};

/// Diffie-Hellman group: prime modulus p and a primitive root g in [2, p).
class DhParams {
public:
    static constexpr std::uint64_t classroom_max_modulus = 100;
    static constexpr std::uint64_t demo_max_modulus = (1ull << 31);

    DhParams(std::uint64_t p, std::uint64_t g, ParamMode mode = ParamMode::classroom);

    /// p = 97, g = 5.
    static DhParams classroom_default();

    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t g() const noexcept { return g_; }
    ParamMode mode() const noexcept { return mode_; }

    bool operator==(const DhParams&) const = default;

private:
    std::uint64_t p_;
    std::uint64_t g_;
    ParamMode mode_;
};

/// Secret exponent in [1, p-1) and its public value g^secret mod p.
class DhKeyPair {
public:
    static DhKeyPair from_secret(const DhParams& params, std::uint64_t secret);

    std::uint64_t secret() const noexcept { return secret_; }
    std::uint64_t public_value() const noexcept { return public_value_; }

    bool operator==(const DhKeyPair&) const = default;

private:
    DhKeyPair(std::uint64_t secret, std::uint64_t public_value) : secret_(secret), public_value_(public_value) {}

    std::uint64_t secret_;
    std::uint64_t public_value_;
};

/// Secret drawn uniformly from [1, p-1); never 0 or p-1.
DhKeyPair dh_keygen(const DhParams& params, Rng& rng);

struct SharedSecret {
    std::uint64_t value;
    /// Peer sent 1: the result is 1 no matter what our secret is.
    bool degenerate;
    std::string warning;
};

/// peer_public^own.secret mod p. Rejects peer values outside [1, p).
SharedSecret dh_shared_secret(const DhKeyPair& own, std::uint64_t peer_public, const DhParams& params,
                              WorkCounter* counter = nullptr);

/// Residue rendered as a hue on the color wheel. Saturation and lightness are fixed.
struct ColorSwatch {
    static constexpr int fixed_saturation = 80;
    static constexpr int fixed_lightness = 50;

    std::uint64_t residue = 0;
    int hue = 0;  // degrees, 0..359
    int saturation = fixed_saturation;
    int lightness = fixed_lightness;

    std::string css() const;  // "hsl(178, 80%, 50%)"
    std::string hex() const;  // "#19e6d8"

    bool operator==(const ColorSwatch&) const = default;
};

/// hue = round(residue * 360 / p) mod 360. Injective on [0, p) for p <= 360.
ColorSwatch residue_to_color(std::uint64_t residue, const DhParams& params);
ColorSwatch residue_to_color(std::uint64_t residue, std::uint64_t modulus);

}  // namespace cryptolab

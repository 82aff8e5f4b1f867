#include "cryptolab/dh.hpp"

#include <cmath>
#include <cstdio>

#include "cryptolab/error.hpp"
#include "cryptolab/modmath.hpp"

namespace cryptolab {

DhParams::DhParams(std::uint64_t p, std::uint64_t g, ParamMode mode) : p_(p), g_(g), mode_(mode) {
    if (!is_prime(p)) throw InvalidKey("modulus " + std::to_string(p) + " is not prime");
    if (mode == ParamMode::classroom && p > classroom_max_modulus) {
        throw InvalidKey("classroom modulus must be at most " + std::to_string(classroom_max_modulus) +
                         " so every residue has a color; got " + std::to_string(p));
    }
    if (p >= demo_max_modulus) throw InvalidKey("modulus must be below 2^31");
    if (g < 2 || g >= p) throw InvalidKey("generator must lie in [2, p)");
    if (!is_primitive_root(g, p)) {
        throw InvalidKey(std::to_string(g) + " is not a primitive root modulo " + std::to_string(p));
    }
}

DhParams DhParams::classroom_default() { return DhParams(97, 5); }

DhKeyPair DhKeyPair::from_secret(const DhParams& params, std::uint64_t secret) {
    if (secret < 1 || secret >= params.p() - 1) {
        throw OutOfRange("secret must lie in [1, " + std::to_string(params.p() - 1) + "), got " +
                         std::to_string(secret));
    }
    return DhKeyPair(secret, modpow(params.g(), secret, params.p()));
}

DhKeyPair dh_keygen(const DhParams& params, Rng& rng) {
    return DhKeyPair::from_secret(params, rng.uniform(1, params.p() - 2));
}

SharedSecret dh_shared_secret(const DhKeyPair& own, std::uint64_t peer_public, const DhParams& params,
                              WorkCounter* counter) {
    if (peer_public < 1 || peer_public >= params.p()) {
        throw OutOfRange("peer public value " + std::to_string(peer_public) + " outside [1, " +
                         std::to_string(params.p()) + ")");
    }
    SharedSecret shared{modpow(peer_public, own.secret(), params.p(), counter), false, {}};
    if (peer_public == 1) {
        shared.degenerate = true;
        shared.warning = "peer public value is 1: the shared secret is 1 whatever the secrets are";
    }
    return shared;
}

ColorSwatch residue_to_color(std::uint64_t residue, std::uint64_t modulus) {
    if (modulus < 2) throw OutOfRange("modulus must be at least 2");
    if (residue >= modulus) {
        throw OutOfRange("residue " + std::to_string(residue) + " outside [0, " + std::to_string(modulus) + ")");
    }
    ColorSwatch swatch;
    swatch.residue = residue;
    // round half up in integer arithmetic
    swatch.hue = static_cast<int>(((2 * residue * 360 + modulus) / (2 * modulus)) % 360);
    return swatch;
}

ColorSwatch residue_to_color(std::uint64_t residue, const DhParams& params) {
    return residue_to_color(residue, params.p());
}

std::string ColorSwatch::css() const {
    return "hsl(" + std::to_string(hue) + ", " + std::to_string(saturation) + "%, " + std::to_string(lightness) +
           "%)";
}

std::string ColorSwatch::hex() const {
    const double s = saturation / 100.0;
    const double l = lightness / 100.0;
    const double c = (1.0 - std::abs(2.0 * l - 1.0)) * s;
    const double h = hue / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(h)) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    const double m = l - c / 2.0;
    auto channel = [m](double v) { return static_cast<int>(std::lround((v + m) * 255.0)); };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(r), channel(g), channel(b));
    return buf;
}

}  // namespace cryptolab

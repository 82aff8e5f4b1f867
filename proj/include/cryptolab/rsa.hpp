#pragma once

#include <cstdint>
#include <string>

#include "cryptolab/work_counter.hpp"

namespace cryptolab {

// Textbook small-prime RSA. No padding and no security claims: it exists to
// make the two key-pair directions (lock with the public key, sign with the
// private key) computable by hand.

struct ToyRsaPublicKey {
    std::uint64_t n = 0;
    std::uint64_t e = 0;

    bool operator==(const ToyRsaPublicKey&) const = default;
};

struct ToyRsaKeyPair {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::uint64_t n = 0;
    std::uint64_t e = 0;
    std::uint64_t d = 0;

    std::uint64_t phi() const noexcept { return (p - 1) * (q - 1); }
    ToyRsaPublicKey public_key() const noexcept { return {n, e}; }

    bool operator==(const ToyRsaKeyPair&) const = default;
};

inline constexpr std::uint64_t toy_rsa_max_modulus = (1ull << 31);

/// d = e^-1 mod (p-1)(q-1) via the extended Euclidean algorithm.
ToyRsaKeyPair rsa_keygen(std::uint64_t p, std::uint64_t q, std::uint64_t e);

/// m^e mod n.
std::uint64_t public_transform(std::uint64_t m, const ToyRsaPublicKey& key);
/// c^d mod n.
std::uint64_t private_transform(std::uint64_t c, const ToyRsaKeyPair& key);

/// Multiplying vs. factoring, both counted.
struct OneWayReport {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t product = 0;
    std::uint64_t multiply_steps = 0;
    std::uint64_t factor_steps = 0;
    std::uint64_t recovered_factor = 0;
    std::string note;
};

/// a and b must be distinct primes with a*b < 2^31.
OneWayReport oneway_demo(std::uint64_t a, std::uint64_t b);

}  // namespace cryptolab

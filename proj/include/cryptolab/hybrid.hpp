#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cryptolab/rsa.hpp"

namespace cryptolab {

/// Symmetric body plus the symmetric key seed wrapped under the recipient's
/// public key, optionally signed by the sender.
struct HybridEnvelope {
    std::uint64_t wrapped_key = 0;
    std::vector<std::uint8_t> body;
    std::optional<std::uint64_t> signature;

    bool operator==(const HybridEnvelope&) const = default;
};

enum class Authenticity { verified, unverified, failed };

std::string to_string(Authenticity a);

struct OpenedMessage {
    std::string message;
    Authenticity authenticity;
};

/// Rolling checksum h = (31*h + byte + 1) mod modulus over the body. With an
/// odd modulus coprime to 31, flipping any single bit changes the checksum.
std::uint64_t body_checksum(std::span<const std::uint8_t> body, std::uint64_t modulus);

/// Encrypts the message with the toy block cipher keyed from `symmetric_seed`,
/// wraps the seed with the recipient's public key and, given a sender key
/// pair, signs the body checksum with the sender's private key.
HybridEnvelope hybrid_seal(std::string_view message, const ToyRsaPublicKey& recipient,
                           const std::optional<ToyRsaKeyPair>& sender, std::uint64_t symmetric_seed);

OpenedMessage hybrid_open(const HybridEnvelope& envelope, const ToyRsaKeyPair& recipient,
                          const std::optional<ToyRsaPublicKey>& sender);

}  // namespace cryptolab

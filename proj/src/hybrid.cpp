#include "cryptolab/hybrid.hpp"

#include "cryptolab/classical.hpp"
#include "cryptolab/error.hpp"
#include "cryptolab/toyblock.hpp"

namespace cryptolab {

std::string to_string(Authenticity a) {
    switch (a) {
        case Authenticity::verified: return "verified";
        case Authenticity::unverified: return "unverified";
        case Authenticity::failed: return "FAILED";
    }
    return "unknown";
}

std::uint64_t body_checksum(std::span<const std::uint8_t> body, std::uint64_t modulus) {
    if (modulus < 2) throw OutOfRange("checksum modulus must be at least 2");
    std::uint64_t h = 0;
    for (const auto byte : body) h = (h * 31 + byte + 1) % modulus;
    return h;
}

HybridEnvelope hybrid_seal(std::string_view message, const ToyRsaPublicKey& recipient,
                           const std::optional<ToyRsaKeyPair>& sender, std::uint64_t symmetric_seed) {
    if (message.empty()) throw EmptySample("nothing to seal: empty message");
    if (symmetric_seed >= recipient.n) {
        throw OutOfRange("symmetric key seed " + std::to_string(symmetric_seed) +
                         " must be below the recipient modulus " + std::to_string(recipient.n));
    }
    // validates the 0..127 character range
    chars_to_bits(message);

    const ToyBlockKey key = ToyBlockKey::from_seed(symmetric_seed);
    const std::vector<std::uint8_t> plain(message.begin(), message.end());

    HybridEnvelope envelope;
    envelope.body = toyblock_encrypt_bytes(plain, key);
    envelope.wrapped_key = public_transform(symmetric_seed, recipient);
    if (sender) envelope.signature = private_transform(body_checksum(envelope.body, sender->n), *sender);
    return envelope;
}

OpenedMessage hybrid_open(const HybridEnvelope& envelope, const ToyRsaKeyPair& recipient,
                          const std::optional<ToyRsaPublicKey>& sender) {
    if (envelope.body.empty()) throw ProtocolError("malformed envelope: empty body");
    if (envelope.wrapped_key >= recipient.n) throw ProtocolError("malformed envelope: wrapped key out of range");

    const std::uint64_t seed = private_transform(envelope.wrapped_key, recipient);
    const auto plain = toyblock_decrypt_bytes(envelope.body, ToyBlockKey::from_seed(seed));

    OpenedMessage opened{std::string(plain.begin(), plain.end()), Authenticity::unverified};
    if (envelope.signature && sender) {
        if (*envelope.signature >= sender->n) {
            opened.authenticity = Authenticity::failed;
        } else {
            const bool match = public_transform(*envelope.signature, *sender) == body_checksum(envelope.body, sender->n);
            opened.authenticity = match ? Authenticity::verified : Authenticity::failed;
        }
    }
    return opened;
}

}  // namespace cryptolab

#include "cryptolab/toyblock.hpp"

#include "cryptolab/error.hpp"
#include "cryptolab/random.hpp"

namespace cryptolab {

BitPermutation identity_permutation() { return {0, 1, 2, 3, 4, 5, 6, 7}; }

BitPermutation nibble_swap() { return {4, 5, 6, 7, 0, 1, 2, 3}; }

ToyBlockKey::ToyBlockKey(std::vector<std::uint8_t> round_keys, BitPermutation permutation)
    : round_keys_(std::move(round_keys)), permutation_(permutation) {
    if (round_keys_.empty()) throw InvalidKey("toy block key needs at least one round");
    std::array<bool, 8> seen{};
    for (std::size_t i = 0; i < 8; ++i) {
        const auto target = permutation_[i];
        if (target > 7 || seen[target]) throw InvalidKey("bit permutation is not a bijection on 0..7");
        seen[target] = true;
        inverse_[target] = static_cast<std::uint8_t>(i);
    }
}

ToyBlockKey ToyBlockKey::from_seed(std::uint64_t seed, std::size_t rounds) {
    Rng rng(seed);
    std::vector<std::uint8_t> keys(rounds);
    for (auto& k : keys) k = static_cast<std::uint8_t>(rng.uniform(0, 255));
    return ToyBlockKey(std::move(keys));
}

std::uint8_t permute_bits(std::uint8_t block, const BitPermutation& permutation) {
    std::uint8_t out = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        if ((block >> i) & 1u) out = static_cast<std::uint8_t>(out | (1u << permutation[i]));
    }
    return out;
}

std::uint8_t toyblock_encrypt(std::uint8_t block, const ToyBlockKey& key) {
    for (const auto round_key : key.round_keys()) {
        block = permute_bits(static_cast<std::uint8_t>(block ^ round_key), key.permutation());
    }
    return block;
}

std::uint8_t toyblock_decrypt(std::uint8_t block, const ToyBlockKey& key) {
    const auto& keys = key.round_keys();
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
        block = static_cast<std::uint8_t>(permute_bits(block, key.inverse_permutation()) ^ *it);
    }
    return block;
}

std::vector<std::uint8_t> toyblock_encrypt_bytes(std::span<const std::uint8_t> data, const ToyBlockKey& key) {
    std::vector<std::uint8_t> out;
    out.reserve(data.size());
    for (const auto b : data) out.push_back(toyblock_encrypt(b, key));
    return out;
}

std::vector<std::uint8_t> toyblock_decrypt_bytes(std::span<const std::uint8_t> data, const ToyBlockKey& key) {
    std::vector<std::uint8_t> out;
    out.reserve(data.size());
    for (const auto b : data) out.push_back(toyblock_decrypt(b, key));
    return out;
}

}  // namespace cryptolab

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace cryptolab {

/// Bit-position bijection: bit i of the input lands at position map[i] (bit 0 is the LSB).
using BitPermutation = std::array<std::uint8_t, 8>;

BitPermutation identity_permutation();
/// Swaps bit i with bit i + 4, i.e. exchanges the two nibbles. Self-inverse.
BitPermutation nibble_swap();

/// Key for the XOR + bit-swap toy block cipher on 8-bit blocks.
class ToyBlockKey {
public:
    static constexpr std::size_t default_rounds = 2;

    ToyBlockKey(std::vector<std::uint8_t> round_keys, BitPermutation permutation = nibble_swap());

    /// Derives default_rounds (or `rounds`) round keys from a seed via Rng.
    static ToyBlockKey from_seed(std::uint64_t seed, std::size_t rounds = default_rounds);

    std::size_t rounds() const noexcept { return round_keys_.size(); }
    const std::vector<std::uint8_t>& round_keys() const noexcept { return round_keys_; }
    const BitPermutation& permutation() const noexcept { return permutation_; }
    const BitPermutation& inverse_permutation() const noexcept { return inverse_; }

private:
    std::vector<std::uint8_t> round_keys_;
    BitPermutation permutation_;
    BitPermutation inverse_;
};

std::uint8_t permute_bits(std::uint8_t block, const BitPermutation& permutation);

/// Each round: block <- permute(block XOR round_key).
std::uint8_t toyblock_encrypt(std::uint8_t block, const ToyBlockKey& key);
/// Rounds undone in reverse: block <- permute^-1(block) XOR round_key.
std::uint8_t toyblock_decrypt(std::uint8_t block, const ToyBlockKey& key);

/// Block-by-block (ECB) over a byte string.
std::vector<std::uint8_t> toyblock_encrypt_bytes(std::span<const std::uint8_t> data, const ToyBlockKey& key);
std::vector<std::uint8_t> toyblock_decrypt_bytes(std::span<const std::uint8_t> data, const ToyBlockKey& key);

}  // namespace cryptolab

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "cryptolab/alphabet.hpp"
#include "cryptolab/work_counter.hpp"

namespace cryptolab {

/// Caesar key: number of alphabet positions to shift, 0 <= shift < |alphabet|.
struct ShiftKey {
    std::size_t shift = 0;

    /// Reduces any integer (including negatives) into range for the alphabet.
    static ShiftKey normalized(long long shift, const Alphabet& alphabet = latin_alphabet());

    bool operator==(const ShiftKey&) const = default;
};

/// One-time pad key: one alphabet symbol per message position.
struct PadKey {
    std::string symbols;

    bool operator==(const PadKey&) const = default;
};

struct RailKey {
    std::size_t rails = 2;

    bool operator==(const RailKey&) const = default;
};

// Letter ciphers fold case to the alphabet and, in preserve mode, copy
// characters outside the alphabet through unchanged.

std::string caesar_encrypt(std::string_view plaintext, ShiftKey key,
                           const Alphabet& alphabet = latin_alphabet(),
                           TextMode mode = TextMode::preserve,
                           WorkCounter* counter = nullptr);

std::string caesar_decrypt(std::string_view ciphertext, ShiftKey key,
                           const Alphabet& alphabet = latin_alphabet(),
                           TextMode mode = TextMode::preserve,
                           WorkCounter* counter = nullptr);

/// Position-aligned: key[i] encrypts text[i]. In preserve mode the key symbol
/// at a non-alphabet position is consumed but unused.
std::string otp_encrypt(std::string_view plaintext, const PadKey& key,
                        const Alphabet& alphabet = latin_alphabet(),
                        TextMode mode = TextMode::preserve);

std::string otp_decrypt(std::string_view ciphertext, const PadKey& key,
                        const Alphabet& alphabet = latin_alphabet(),
                        TextMode mode = TextMode::preserve);

/// Rail fence transposition over every character of the input. With
/// rails >= length the zigzag never turns and the text is returned as is.
std::string railfence_encrypt(std::string_view plaintext, RailKey key);
std::string railfence_decrypt(std::string_view ciphertext, RailKey key);

/// 8 bits per character, most significant bit first. Rejects bytes above 127.
std::string chars_to_bits(std::string_view text);
std::string bits_to_chars(std::string_view bits);

/// Uppercases and folds text the way letter ciphers see it.
std::string normalize_text(std::string_view text, const Alphabet& alphabet = latin_alphabet());

}  // namespace cryptolab

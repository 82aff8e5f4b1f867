#include "cryptolab/classical.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "cryptolab/error.hpp"

namespace cryptolab {
namespace {

SymbolError not_in_alphabet(std::size_t position, char c) {
    return SymbolError(position, c,
                       "character '" + std::string(1, c) + "' at position " + std::to_string(position) +
                           " is not in the alphabet");
}

void check_shift(ShiftKey key, const Alphabet& alphabet) {
    if (key.shift >= alphabet.size()) {
        throw InvalidKey("shift " + std::to_string(key.shift) + " must be below alphabet size " +
                         std::to_string(alphabet.size()));
    }
}

std::string shift_text(std::string_view text, std::size_t shift, const Alphabet& alphabet, TextMode mode,
                       WorkCounter* counter) {
    std::string out;
    out.reserve(text.size());
    std::uint64_t substitutions = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = alphabet.normalize(text[i]);
        const auto index = alphabet.index_of(c);
        if (!index) {
            if (mode == TextMode::strict) throw not_in_alphabet(i, text[i]);
            out.push_back(c);
            continue;
        }
        out.push_back(alphabet.symbol_at((*index + shift) % alphabet.size()));
        ++substitutions;
    }
    if (counter) counter->add_substitutions(substitutions);
    return out;
}

// sign = +1 adds key indices, -1 subtracts them.
std::string pad_combine(std::string_view text, const PadKey& key, const Alphabet& alphabet, TextMode mode,
                        int sign) {
    if (key.symbols.size() != text.size()) {
        throw LengthMismatch(text.size(), key.symbols.size(),
                             "pad key length " + std::to_string(key.symbols.size()) +
                                 " does not match text length " + std::to_string(text.size()));
    }
    const std::size_t n = alphabet.size();
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = alphabet.normalize(text[i]);
        const auto ci = alphabet.index_of(c);
        if (!ci) {
            if (mode == TextMode::strict) throw not_in_alphabet(i, text[i]);
            out.push_back(c);
            continue;
        }
        const auto ki = alphabet.index_of(alphabet.normalize(key.symbols[i]));
        if (!ki) {
            throw SymbolError(i, key.symbols[i],
                              "pad key symbol at position " + std::to_string(i) + " is not in the alphabet");
        }
        const std::size_t combined = sign > 0 ? (*ci + *ki) % n : (*ci + n - *ki) % n;
        out.push_back(alphabet.symbol_at(combined));
    }
    return out;
}

// Rail of each position along the zigzag.
std::vector<std::size_t> rail_order(std::size_t length, RailKey key) {
    if (key.rails < 2) {
        throw InvalidKey("rail fence needs at least 2 rails, got " + std::to_string(key.rails));
    }
    const std::size_t cycle = 2 * (key.rails - 1);
    std::vector<std::size_t> rail(length);
    for (std::size_t i = 0; i < length; ++i) {
        const std::size_t r = i % cycle;
        rail[i] = r < key.rails ? r : cycle - r;
    }
    // positions sorted by rail, left to right within a rail
    std::vector<std::size_t> order(length);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rail[a] < rail[b]; });
    return order;
}

}  // namespace

ShiftKey ShiftKey::normalized(long long shift, const Alphabet& alphabet) {
    const auto n = static_cast<long long>(alphabet.size());
    return ShiftKey{static_cast<std::size_t>(((shift % n) + n) % n)};
}

std::string normalize_text(std::string_view text, const Alphabet& alphabet) {
    std::string out(text);
    for (auto& c : out) c = alphabet.normalize(c);
    return out;
}

std::string caesar_encrypt(std::string_view plaintext, ShiftKey key, const Alphabet& alphabet, TextMode mode,
                           WorkCounter* counter) {
    check_shift(key, alphabet);
    return shift_text(plaintext, key.shift, alphabet, mode, counter);
}

std::string caesar_decrypt(std::string_view ciphertext, ShiftKey key, const Alphabet& alphabet, TextMode mode,
                           WorkCounter* counter) {
    check_shift(key, alphabet);
    return shift_text(ciphertext, (alphabet.size() - key.shift) % alphabet.size(), alphabet, mode, counter);
}

std::string otp_encrypt(std::string_view plaintext, const PadKey& key, const Alphabet& alphabet, TextMode mode) {
    return pad_combine(plaintext, key, alphabet, mode, +1);
}

std::string otp_decrypt(std::string_view ciphertext, const PadKey& key, const Alphabet& alphabet, TextMode mode) {
    return pad_combine(ciphertext, key, alphabet, mode, -1);
}

std::string railfence_encrypt(std::string_view plaintext, RailKey key) {
    const auto order = rail_order(plaintext.size(), key);
    std::string out;
    out.reserve(plaintext.size());
    for (const auto pos : order) out.push_back(plaintext[pos]);
    return out;
}

std::string railfence_decrypt(std::string_view ciphertext, RailKey key) {
    const auto order = rail_order(ciphertext.size(), key);
    std::string out(ciphertext.size(), '\0');
    for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = ciphertext[i];
    return out;
}

std::string chars_to_bits(std::string_view text) {
    std::string bits;
    bits.reserve(text.size() * 8);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto byte = static_cast<unsigned char>(text[i]);
        if (byte > 127) {
            throw SymbolError(i, text[i],
                              "character at position " + std::to_string(i) + " is outside the 8-bit code (0-127)");
        }
        for (int bit = 7; bit >= 0; --bit) bits.push_back(((byte >> bit) & 1) ? '1' : '0');
    }
    return bits;
}

std::string bits_to_chars(std::string_view bits) {
    if (bits.size() % 8 != 0) {
        throw LengthMismatch(bits.size() + (8 - bits.size() % 8), bits.size(),
                             "bit string length " + std::to_string(bits.size()) + " is not a multiple of 8");
    }
    std::string text;
    text.reserve(bits.size() / 8);
    for (std::size_t i = 0; i < bits.size(); i += 8) {
        unsigned value = 0;
        for (std::size_t j = 0; j < 8; ++j) {
            const char b = bits[i + j];
            if (b != '0' && b != '1') {
                throw SymbolError(i + j, b, "bit string contains '" + std::string(1, b) + "'");
            }
            value = (value << 1) | static_cast<unsigned>(b - '0');
        }
        if (value > 127) {
            throw SymbolError(i / 8, static_cast<char>(value), "decoded byte " + std::to_string(value) +
                                                                    " is outside the 8-bit code (0-127)");
        }
        text.push_back(static_cast<char>(value));
    }
    return text;
}

}  // namespace cryptolab

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace cryptolab {

/// Ordered set of distinct symbols that letter ciphers operate on.
///
/// index_of() and symbol_at() are mutual inverses. Lowercase input is folded
/// to uppercase when the uppercase form belongs to the alphabet.
class Alphabet {
public:
    /// The 26 uppercase Latin letters.
    Alphabet();
    explicit Alphabet(std::string symbols);

    std::size_t size() const noexcept { return symbols_.size(); }
    const std::string& symbols() const noexcept { return symbols_; }

    bool contains(char c) const noexcept { return index_[static_cast<unsigned char>(c)] >= 0; }
    std::optional<std::size_t> index_of(char c) const noexcept;
    char symbol_at(std::size_t index) const;

    /// Case folding: returns the alphabet member for c, or c unchanged.
    char normalize(char c) const noexcept;

    bool operator==(const Alphabet& other) const noexcept { return symbols_ == other.symbols_; }

private:
    std::string symbols_;
    std::array<int, 256> index_{};
};

const Alphabet& latin_alphabet();

/// How letter ciphers treat characters outside the alphabet.
enum class TextMode {
    preserve,  // pass through unencrypted
    strict,    // reject with the offending position
};

}  // namespace cryptolab

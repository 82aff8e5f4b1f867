#include "cryptolab/alphabet.hpp"

#include <cctype>

#include "cryptolab/error.hpp"

namespace cryptolab {

Alphabet::Alphabet() : Alphabet("ABCDEFGHIJKLMNOPQRSTUVWXYZ") {}

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2) {
        throw InvalidKey("alphabet needs at least 2 symbols");
    }
    index_.fill(-1);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        auto& slot = index_[static_cast<unsigned char>(symbols_[i])];
        if (slot >= 0) {
            throw InvalidKey(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
        }
        slot = static_cast<int>(i);
    }
}

std::optional<std::size_t> Alphabet::index_of(char c) const noexcept {
    const int i = index_[static_cast<unsigned char>(c)];
    if (i < 0) return std::nullopt;
    return static_cast<std::size_t>(i);
}

char Alphabet::symbol_at(std::size_t index) const {
    if (index >= symbols_.size()) {
        throw OutOfRange("alphabet index " + std::to_string(index) + " out of range");
    }
    return symbols_[index];
}

char Alphabet::normalize(char c) const noexcept {
    if (contains(c)) return c;
    const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return contains(upper) ? upper : c;
}

const Alphabet& latin_alphabet() {
    static const Alphabet alphabet;
    return alphabet;
}

}  // namespace cryptolab

#pragma once

// Independent oracles and hand-rolled generators shared by the test programs.
// Oracles deliberately avoid the library: plain loops, lookup strings, no
// shortcuts, so that an agreement means two different routes met.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

inline const std::string letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";

inline std::string caesar(const std::string& text, int shift) {
    std::string out;
    for (char c : text) {
        const auto i = letters.find(c);
        out += i == std::string::npos ? c : letters[(i + static_cast<std::size_t>(shift)) % 26];
    }
    return out;
}

inline std::string otp_add(const std::string& text, const std::string& key) {
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        out += letters[(letters.find(text[i]) + letters.find(key[i])) % 26];
    }
    return out;
}

// Write the zigzag into rows, then read the rows in order.
inline std::string zigzag(const std::string& text, std::size_t rails) {
    std::vector<std::string> rows(rails);
    std::size_t row = 0;
    int step = 1;
    for (char c : text) {
        rows[row] += c;
        if (rails > 1) {
            if (row == 0) step = 1;
            if (row == rails - 1) step = -1;
            row = static_cast<std::size_t>(static_cast<int>(row) + step);
        }
    }
    std::string out;
    for (const auto& r : rows) out += r;
    return out;
}

inline std::string bits_of(const std::string& text) {
    std::string out;
    for (unsigned char c : text) {
        std::string byte;
        unsigned v = c;
        for (int i = 0; i < 8; ++i) {
            byte.insert(byte.begin(), static_cast<char>('0' + v % 2));
            v /= 2;
        }
        out += byte;
    }
    return out;
}

// One round: XOR, then move bit i to position perm[i] (bit 0 = least significant).
inline unsigned toy_round(unsigned block, unsigned key, const std::vector<unsigned>& perm) {
    unsigned x = block ^ key;
    unsigned bits[8];
    for (int i = 0; i < 8; ++i) bits[i] = (x >> i) & 1u;
    unsigned out = 0;
    for (int i = 0; i < 8; ++i) out |= bits[i] << perm[static_cast<std::size_t>(i)];
    return out;
}

inline std::uint64_t naive_modpow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    for (std::uint64_t i = 0; i < exp; ++i) r = (r * (base % mod)) % mod;
    return r;
}

inline bool sieve_prime(std::uint64_t n) {
    if (n < 2) return false;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i * i <= n; ++i) {
        if (!composite[i]) {
            for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
        }
    }
    return !composite[n];
}

// Smallest k >= 1 with g^k = 1 (mod p), by walking powers.
inline std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t p) {
    std::uint64_t x = g % p;
    for (std::uint64_t k = 1; k < p; ++k) {
        if (x == 1) return k;
        x = x * g % p;
    }
    return 0;
}

inline std::uint64_t brute_inverse(std::uint64_t e, std::uint64_t m) {
    for (std::uint64_t d = 1; d < m; ++d) {
        if (e * d % m == 1) return d;
    }
    return 0;
}

}  // namespace oracle

namespace gen {

using Engine = std::mt19937_64;

inline std::uint64_t below(Engine& rng, std::uint64_t n) { return rng() % n; }

inline std::string upper_letters(Engine& rng, std::size_t length) {
    std::string s;
    for (std::size_t i = 0; i < length; ++i) s += oracle::letters[below(rng, 26)];
    return s;
}

// Letters of both cases, digits, spaces and punctuation.
inline std::string mixed_text(Engine& rng, std::size_t length) {
    static const std::string pool = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789 .,;:!?'-";
    std::string s;
    for (std::size_t i = 0; i < length; ++i) s += pool[below(rng, pool.size())];
    return s;
}

inline std::string ascii_text(Engine& rng, std::size_t length) {
    std::string s;
    for (std::size_t i = 0; i < length; ++i) s += static_cast<char>(below(rng, 128));
    return s;
}

}  // namespace gen

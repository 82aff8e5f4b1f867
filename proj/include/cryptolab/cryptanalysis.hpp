#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cryptolab/alphabet.hpp"
#include "cryptolab/classical.hpp"
#include "cryptolab/frequency.hpp"
#include "cryptolab/work_counter.hpp"

namespace cryptolab {

struct ShiftCandidate {
    ShiftKey shift;
    std::string plaintext;
};

/// Every Caesar decryption of the ciphertext, shift 0 first. Costs |alphabet|
/// substitutions per alphabet symbol.
std::vector<ShiftCandidate> caesar_bruteforce(std::string_view ciphertext,
                                              const Alphabet& alphabet = latin_alphabet(),
                                              WorkCounter* counter = nullptr);

struct RankedShift {
    ShiftKey shift;
    double score;
    std::string preview;
};

/// One entry per shift, ascending by score (ties by shift); front() is the best guess.
struct RankedShifts {
    std::vector<RankedShift> entries;

    const RankedShift& best() const { return entries.front(); }
};

inline constexpr std::size_t preview_length = 40;

/// Scores each shift by the chi-squared distance between the frequencies of
/// the text decrypted with that shift and the reference table.
RankedShifts caesar_frequency_attack(std::string_view ciphertext,
                                     const FrequencyTable& reference = english_frequencies(),
                                     const Alphabet& alphabet = latin_alphabet());

/// The unique pad key that turns `plaintext` into `ciphertext`.
PadKey otp_key_for(std::string_view plaintext, std::string_view ciphertext,
                   const Alphabet& alphabet = latin_alphabet());

struct CandidatePlaintext {
    PadKey key;
    std::string plaintext;
};

inline constexpr std::size_t otp_bruteforce_max_length = 6;

/// Exhaustive pad-key search: visits all |alphabet|^L keys in lexicographic
/// order with the plaintext each one yields. Returns the number of trials.
/// Refuses L > otp_bruteforce_max_length.
std::uint64_t otp_bruteforce(std::string_view ciphertext,
                             const std::function<void(const CandidatePlaintext&)>& visit,
                             const Alphabet& alphabet = latin_alphabet(),
                             WorkCounter* counter = nullptr);

struct PerfectSecrecyReport {
    std::string ciphertext;
    std::uint64_t plaintexts = 0;     // candidate plaintexts enumerated
    std::uint64_t distinct_keys = 0;  // distinct keys that explain them
    std::uint64_t key_space = 0;      // |alphabet|^L
    bool bijective = false;
};

/// Maps every plaintext of the ciphertext's length to the key explaining it
/// and checks the map hits every key exactly once.
PerfectSecrecyReport perfect_secrecy_check(std::string_view ciphertext,
                                           const Alphabet& alphabet = latin_alphabet());

}  // namespace cryptolab

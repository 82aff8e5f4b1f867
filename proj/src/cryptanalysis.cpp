#include "cryptolab/cryptanalysis.hpp"

#include <algorithm>
#include <map>

#include "cryptolab/error.hpp"

namespace cryptolab {
namespace {

std::vector<std::size_t> strict_indices(std::string_view text, const Alphabet& alphabet, const char* what) {
    std::vector<std::size_t> indices;
    indices.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto index = alphabet.index_of(alphabet.normalize(text[i]));
        if (!index) {
            throw SymbolError(i, text[i],
                              std::string(what) + " character at position " + std::to_string(i) +
                                  " is not in the alphabet");
        }
        indices.push_back(*index);
    }
    return indices;
}

std::uint64_t checked_key_space(std::size_t length, std::size_t alphabet_size) {
    if (length > otp_bruteforce_max_length) {
        throw OutOfRange("refusing exhaustive one-time-pad search over " + std::to_string(length) +
                         " symbols: that is " + std::to_string(alphabet_size) + "^" + std::to_string(length) +
                         " keys, and every plaintext of that length is equally possible anyway (limit is " +
                         std::to_string(otp_bruteforce_max_length) + ")");
    }
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < length; ++i) space *= alphabet_size;
    return space;
}

// Increments a base-n counter; returns false on wrap-around.
bool next_digits(std::vector<std::size_t>& digits, std::size_t n) {
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (++*it < n) return true;
        *it = 0;
    }
    return false;
}

}  // namespace

std::vector<ShiftCandidate> caesar_bruteforce(std::string_view ciphertext, const Alphabet& alphabet,
                                              WorkCounter* counter) {
    if (ciphertext.empty()) throw EmptySample("nothing to brute-force: empty ciphertext");
    std::vector<ShiftCandidate> candidates;
    candidates.reserve(alphabet.size());
    for (std::size_t shift = 0; shift < alphabet.size(); ++shift) {
        candidates.push_back({ShiftKey{shift},
                              caesar_decrypt(ciphertext, ShiftKey{shift}, alphabet, TextMode::preserve, counter)});
    }
    return candidates;
}

RankedShifts caesar_frequency_attack(std::string_view ciphertext, const FrequencyTable& reference,
                                     const Alphabet& alphabet) {
    const FrequencyTable observed = letter_frequencies(ciphertext, alphabet);
    const std::size_t n = alphabet.size();
    const std::string_view head = ciphertext.substr(0, std::min(ciphertext.size(), preview_length));

    RankedShifts ranked;
    ranked.entries.reserve(n);
    for (std::size_t shift = 0; shift < n; ++shift) {
        // decrypting with `shift` relabels cipher symbol j+shift as plain symbol j
        std::map<char, double> relabeled;
        for (std::size_t j = 0; j < n; ++j) relabeled[alphabet.symbol_at(j)] = observed.at_index((j + shift) % n);
        const FrequencyTable decrypted = FrequencyTable::from_weights(alphabet, relabeled);
        ranked.entries.push_back(
            {ShiftKey{shift}, chi_squared(decrypted, reference), caesar_decrypt(head, ShiftKey{shift}, alphabet)});
    }
    std::stable_sort(ranked.entries.begin(), ranked.entries.end(),
                     [](const RankedShift& a, const RankedShift& b) { return a.score < b.score; });
    return ranked;
}

PadKey otp_key_for(std::string_view plaintext, std::string_view ciphertext, const Alphabet& alphabet) {
    if (plaintext.size() != ciphertext.size()) {
        throw LengthMismatch(ciphertext.size(), plaintext.size(),
                             "plaintext length " + std::to_string(plaintext.size()) +
                                 " does not match ciphertext length " + std::to_string(ciphertext.size()));
    }
    const auto p = strict_indices(plaintext, alphabet, "plaintext");
    const auto c = strict_indices(ciphertext, alphabet, "ciphertext");
    const std::size_t n = alphabet.size();
    PadKey key;
    key.symbols.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) key.symbols.push_back(alphabet.symbol_at((c[i] + n - p[i]) % n));
    return key;
}

std::uint64_t otp_bruteforce(std::string_view ciphertext, const std::function<void(const CandidatePlaintext&)>& visit,
                             const Alphabet& alphabet, WorkCounter* counter) {
    if (ciphertext.empty()) throw EmptySample("nothing to brute-force: empty ciphertext");
    const auto cipher = strict_indices(ciphertext, alphabet, "ciphertext");
    checked_key_space(cipher.size(), alphabet.size());
    const std::size_t n = alphabet.size();

    std::vector<std::size_t> key(cipher.size(), 0);
    CandidatePlaintext candidate;
    candidate.key.symbols.assign(cipher.size(), alphabet.symbol_at(0));
    candidate.plaintext.assign(cipher.size(), alphabet.symbol_at(0));
    std::uint64_t trials = 0;
    do {
        for (std::size_t i = 0; i < cipher.size(); ++i) {
            candidate.key.symbols[i] = alphabet.symbol_at(key[i]);
            candidate.plaintext[i] = alphabet.symbol_at((cipher[i] + n - key[i]) % n);
        }
        ++trials;
        if (visit) visit(candidate);
    } while (next_digits(key, n));
    if (counter) counter->add_key_trials(trials);
    return trials;
}

PerfectSecrecyReport perfect_secrecy_check(std::string_view ciphertext, const Alphabet& alphabet) {
    if (ciphertext.empty()) throw EmptySample("empty ciphertext");
    const auto cipher = strict_indices(ciphertext, alphabet, "ciphertext");
    PerfectSecrecyReport report;
    report.ciphertext = normalize_text(ciphertext, alphabet);
    report.key_space = checked_key_space(cipher.size(), alphabet.size());

    std::vector<bool> seen(report.key_space, false);
    std::vector<std::size_t> plain(cipher.size(), 0);
    std::string plaintext(cipher.size(), alphabet.symbol_at(0));
    do {
        for (std::size_t i = 0; i < plain.size(); ++i) plaintext[i] = alphabet.symbol_at(plain[i]);
        const PadKey key = otp_key_for(plaintext, report.ciphertext, alphabet);
        std::uint64_t index = 0;
        for (const char k : key.symbols) index = index * alphabet.size() + *alphabet.index_of(k);
        if (!seen[index]) {
            seen[index] = true;
            ++report.distinct_keys;
        }
        ++report.plaintexts;
    } while (next_digits(plain, alphabet.size()));
    report.bijective = report.plaintexts == report.key_space && report.distinct_keys == report.key_space;
    return report;
}

}  // namespace cryptolab

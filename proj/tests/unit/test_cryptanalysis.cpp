#include <doctest.h>

#include <cmath>
#include <set>

#include "../support.hpp"
#include "cryptolab/classical.hpp"
#include "cryptolab/cryptanalysis.hpp"
#include "cryptolab/error.hpp"
#include "cryptolab/frequency.hpp"

using namespace cryptolab;

namespace {

std::map<char, double> manual_counts(const std::string& text) {
    std::map<char, double> counts;
    double total = 0;
    for (char c : text) {
        const auto up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (up >= 'A' && up <= 'Z') {
            counts[up] += 1;
            total += 1;
        }
    }
    for (auto& [k, v] : counts) v /= total;
    return counts;
}

}  // namespace

TEST_CASE("letter frequencies match a hand count and sum to one") {
    gen::Engine rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const auto text = gen::mixed_text(rng, 1 + gen::below(rng, 80));
        const auto table = letter_frequencies(text);
        const auto expected = manual_counts(text);
        double sum = 0;
        for (char c = 'A'; c <= 'Z'; ++c) {
            const auto it = expected.find(c);
            CHECK(table.frequency(c) == doctest::Approx(it == expected.end() ? 0.0 : it->second).epsilon(1e-12));
            CHECK(table.frequency(c) >= 0.0);
            sum += table.frequency(c);
        }
        if (!expected.empty()) CHECK(std::abs(sum - 1.0) < 1e-9);
    }
    CHECK_THROWS_AS(letter_frequencies("123 !?"), EmptySample);
}

TEST_CASE("frequency table validation") {
    CHECK_THROWS_AS(FrequencyTable(latin_alphabet(), {{'A', -0.1}, {'B', 1.1}}), Error);
    CHECK_THROWS_AS(FrequencyTable(latin_alphabet(), {{'A', 0.5}}), Error);
    CHECK_NOTHROW(FrequencyTable(latin_alphabet(), {{'A', 0.5}, {'Z', 0.5}}));
    const auto parsed = parse_frequency_table("# weights\nA,3\nB,1\n");
    CHECK(parsed.frequency('A') == doctest::Approx(0.75));
    CHECK(parsed.frequency('C') == 0.0);
}

TEST_CASE("bundled english table") {
    const auto& en = english_frequencies();
    CHECK(sort_by_frequency(en).front().first == 'E');
    CHECK(en.frequency('E') == doctest::Approx(0.12702).epsilon(0.01));
    const auto from_file = load_frequency_table(data_directory() / "english_frequencies.csv");
    CHECK(chi_squared(from_file, en) < 1e-9);
}

TEST_CASE("sort by frequency is descending with alphabetic ties") {
    const auto table = letter_frequencies("BBAACD");
    const auto sorted = sort_by_frequency(table);
    REQUIRE(sorted.size() == 26);
    CHECK(sorted[0].first == 'A');
    CHECK(sorted[1].first == 'B');
    CHECK(sorted[2].first == 'C');
    CHECK(sorted[3].first == 'D');
    CHECK(sorted[4].first == 'E');
    for (std::size_t i = 1; i < sorted.size(); ++i) CHECK(sorted[i - 1].second >= sorted[i].second);
}

TEST_CASE("histogram rows scale to the widest symbol") {
    const auto rows = histogram_rows(letter_frequencies("AAAAB"), 20);
    REQUIRE(rows.size() == 26);
    CHECK(rows[0].symbol == 'A');
    CHECK(rows[0].bar_length == 20);
    CHECK(rows[1].bar_length == 5);
    CHECK(rows[2].bar_length == 0);
    const auto text = render_histogram(rows);
    CHECK(text.find(std::string(20, '#')) != std::string::npos);
}

TEST_CASE("chi squared is zero only for identical tables") {
    const auto& en = english_frequencies();
    CHECK(chi_squared(en, en) == 0.0);
    CHECK(chi_squared(letter_frequencies("ZZZZ"), en) > 0.0);
}

TEST_CASE("brute force lists every shift and contains the plaintext") {
    const std::string plain = "ATTACKATDAWN";
    const auto cipher = caesar_encrypt(plain, ShiftKey{7});
    WorkCounter counter;
    const auto all = caesar_bruteforce(cipher, latin_alphabet(), &counter);
    REQUIRE(all.size() == 26);
    for (std::size_t s = 0; s < 26; ++s) {
        CHECK(all[s].shift.shift == s);
        CHECK(all[s].plaintext == caesar_decrypt(cipher, ShiftKey{s}));
    }
    CHECK(all[7].plaintext == plain);
    CHECK(counter.count().substitutions == 26 * plain.size());
}

TEST_CASE("frequency attack ranks the true shift first on english prose") {
    const std::string plain =
        "IT WAS THE BEST OF TIMES IT WAS THE WORST OF TIMES IT WAS THE AGE OF WISDOM "
        "IT WAS THE AGE OF FOOLISHNESS IT WAS THE EPOCH OF BELIEF";
    for (std::size_t shift = 0; shift < 26; ++shift) {
        const auto ranked = caesar_frequency_attack(caesar_encrypt(plain, ShiftKey{shift}));
        REQUIRE(ranked.entries.size() == 26);
        CHECK(ranked.best().shift.shift == shift);
        for (std::size_t i = 1; i < ranked.entries.size(); ++i)
            CHECK(ranked.entries[i - 1].score <= ranked.entries[i].score);
        CHECK(ranked.best().preview.size() <= preview_length);
    }
}

TEST_CASE("otp key recovery is unique and consistent") {
    CHECK(otp_key_for("HELLO", "EQNVZ").symbols == "XMCKL");
    CHECK_THROWS_AS(otp_key_for("HELLO", "EQN"), LengthMismatch);
    gen::Engine rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = gen::below(rng, 20);
        const auto plain = gen::upper_letters(rng, n);
        const auto key = gen::upper_letters(rng, n);
        const auto cipher = otp_encrypt(plain, PadKey{key});
        CHECK(otp_key_for(plain, cipher).symbols == key);
    }
}

TEST_CASE("exhaustive pad search explains every plaintext exactly once") {
    std::set<std::string> plains;
    std::set<std::string> keys;
    const auto trials = otp_bruteforce("QZK", [&](const CandidatePlaintext& c) {
        plains.insert(c.plaintext);
        keys.insert(c.key.symbols);
        CHECK(otp_encrypt(c.plaintext, c.key) == "QZK");
    });
    CHECK(trials == 26u * 26u * 26u);
    CHECK(plains.size() == trials);
    CHECK(keys.size() == trials);
    CHECK_THROWS_AS(otp_bruteforce("ABCDEFG", [](const CandidatePlaintext&) {}), Error);
}

TEST_CASE("perfect secrecy holds for any ciphertext") {
    gen::Engine rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const auto cipher = gen::upper_letters(rng, 1 + gen::below(rng, 3));
        const auto report = perfect_secrecy_check(cipher);
        CHECK(report.bijective);
        CHECK(report.plaintexts == report.key_space);
        CHECK(report.distinct_keys == report.key_space);
    }
}

TEST_CASE("work counting") {
    const auto count = count_work([](WorkCounter& c) {
        c.add_substitutions(3);
        c.add_trial_divisions(2);
    });
    CHECK(count.total() == 5);
    CHECK(to_string(count).find('3') != std::string::npos);
}

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cryptolab/alphabet.hpp"

namespace cryptolab {

/// Relative letter frequencies over an alphabet. Entries are non-negative and
/// sum to 1 (within 1e-9) unless the table is empty (all zero).
class FrequencyTable {
public:
    /// All-zero table.
    explicit FrequencyTable(Alphabet alphabet = latin_alphabet());

    /// Validates the invariants; symbols missing from `entries` get 0.
    FrequencyTable(Alphabet alphabet, const std::map<char, double>& entries);

    /// Scales arbitrary non-negative weights (percentages, counts) to sum to 1.
    static FrequencyTable from_weights(Alphabet alphabet, const std::map<char, double>& weights);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    double frequency(char symbol) const;
    double at_index(std::size_t index) const { return values_.at(index); }
    const std::vector<double>& values() const noexcept { return values_; }
    bool empty() const noexcept;

    bool operator==(const FrequencyTable&) const = default;

private:
    Alphabet alphabet_;
    std::vector<double> values_;
};

/// Average English letter frequencies (bundled, Latin alphabet).
const FrequencyTable& english_frequencies();

/// Reads a table from "symbol,frequency" lines; '#' starts a comment. The
/// weights are normalized, so percentages and fractions both work.
FrequencyTable load_frequency_table(const std::filesystem::path& path, const Alphabet& alphabet = latin_alphabet());
FrequencyTable parse_frequency_table(std::string_view text, const Alphabet& alphabet = latin_alphabet());

std::string read_text_file(const std::filesystem::path& path);

/// Directory holding the bundled data files (overridable with CRYPTOLAB_DATA_DIR).
std::filesystem::path data_directory();

struct HistogramRow {
    char symbol;
    std::size_t bar_length;
    double frequency;

    bool operator==(const HistogramRow&) const = default;
};

/// count(s) / count(all alphabet symbols); non-alphabet characters are ignored.
FrequencyTable letter_frequencies(std::string_view text, const Alphabet& alphabet = latin_alphabet());

/// Descending by frequency, ties in alphabet order.
std::vector<std::pair<char, double>> sort_by_frequency(const FrequencyTable& table);

/// One row per symbol in alphabet order; the most frequent symbol gets `width` cells.
std::vector<HistogramRow> histogram_rows(const FrequencyTable& table, std::size_t width = 40);

/// Fixed-width text bars, one line per row.
std::string render_histogram(const std::vector<HistogramRow>& rows);

/// Sum over symbols of (observed - expected)^2 / expected. Zero iff identical.
double chi_squared(const FrequencyTable& observed, const FrequencyTable& expected);

}  // namespace cryptolab

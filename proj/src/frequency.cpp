#include "cryptolab/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "cryptolab/error.hpp"

namespace cryptolab {
namespace {

constexpr double sum_tolerance = 1e-9;
// Stand-in expectation for symbols the reference says never occur.
constexpr double zero_expectation_floor = 1e-6;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

FrequencyTable::FrequencyTable(Alphabet alphabet) : alphabet_(std::move(alphabet)), values_(alphabet_.size(), 0.0) {}

FrequencyTable::FrequencyTable(Alphabet alphabet, const std::map<char, double>& entries)
    : FrequencyTable(std::move(alphabet)) {
    double sum = 0.0;
    for (const auto& [symbol, value] : entries) {
        const auto index = alphabet_.index_of(symbol);
        if (!index) throw InvalidKey(std::string("frequency table symbol '") + symbol + "' is not in the alphabet");
        if (!(value >= 0.0)) throw OutOfRange(std::string("negative frequency for '") + symbol + "'");
        values_[*index] = value;
        sum += value;
    }
    if (sum != 0.0 && std::abs(sum - 1.0) > sum_tolerance) {
        throw OutOfRange("frequencies sum to " + std::to_string(sum) + ", expected 1");
    }
}

FrequencyTable FrequencyTable::from_weights(Alphabet alphabet, const std::map<char, double>& weights) {
    double total = 0.0;
    for (const auto& [symbol, w] : weights) {
        if (!(w >= 0.0)) throw OutOfRange(std::string("negative weight for '") + symbol + "'");
        total += w;
    }
    if (total == 0.0) throw EmptySample("frequency weights are all zero");
    std::map<char, double> scaled;
    for (const auto& [symbol, w] : weights) scaled[alphabet.normalize(symbol)] += w / total;
    FrequencyTable table(std::move(alphabet));
    for (const auto& [symbol, value] : scaled) {
        const auto index = table.alphabet_.index_of(symbol);
        if (!index) throw InvalidKey(std::string("frequency table symbol '") + symbol + "' is not in the alphabet");
        table.values_[*index] = value;
    }
    return table;
}

double FrequencyTable::frequency(char symbol) const {
    const auto index = alphabet_.index_of(alphabet_.normalize(symbol));
    if (!index) throw InvalidKey(std::string("'") + symbol + "' is not in the alphabet");
    return values_[*index];
}

bool FrequencyTable::empty() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

const FrequencyTable& english_frequencies() {
    // percent of letters in typical English prose
    static const FrequencyTable table = FrequencyTable::from_weights(
        latin_alphabet(), {{'A', 8.167}, {'B', 1.492}, {'C', 2.782}, {'D', 4.253}, {'E', 12.702}, {'F', 2.228},
                           {'G', 2.015}, {'H', 6.094}, {'I', 6.966}, {'J', 0.153}, {'K', 0.772}, {'L', 4.025},
                           {'M', 2.406}, {'N', 6.749}, {'O', 7.507}, {'P', 1.929}, {'Q', 0.095}, {'R', 5.987},
                           {'S', 6.327}, {'T', 9.056}, {'U', 2.758}, {'V', 0.978}, {'W', 2.360}, {'X', 0.150},
                           {'Y', 1.974}, {'Z', 0.074}});
    return table;
}

FrequencyTable parse_frequency_table(std::string_view text, const Alphabet& alphabet) {
    std::map<char, double> weights;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto stripped = trim(line);
        if (stripped.empty()) continue;
        const auto comma = stripped.find(',');
        if (comma == std::string::npos) {
            throw ProtocolError("frequency table line " + std::to_string(line_no) + ": expected 'symbol,frequency'");
        }
        const auto symbol = trim(std::string_view(stripped).substr(0, comma));
        const auto value = trim(std::string_view(stripped).substr(comma + 1));
        if (symbol.size() != 1) {
            throw ProtocolError("frequency table line " + std::to_string(line_no) + ": symbol must be one character");
        }
        char* end = nullptr;
        const double w = std::strtod(value.c_str(), &end);
        if (value.empty() || end != value.c_str() + value.size()) {
            throw ProtocolError("frequency table line " + std::to_string(line_no) + ": bad number '" + value + "'");
        }
        weights[alphabet.normalize(symbol[0])] += w;
    }
    return FrequencyTable::from_weights(alphabet, weights);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

FrequencyTable load_frequency_table(const std::filesystem::path& path, const Alphabet& alphabet) {
    return parse_frequency_table(read_text_file(path), alphabet);
}

std::filesystem::path data_directory() {
    if (const char* env = std::getenv("CRYPTOLAB_DATA_DIR"); env && *env) return env;
    return CRYPTOLAB_DATA_DIR;
}

FrequencyTable letter_frequencies(std::string_view text, const Alphabet& alphabet) {
    std::vector<std::size_t> counts(alphabet.size(), 0);
    std::size_t total = 0;
    for (const char c : text) {
        if (const auto index = alphabet.index_of(alphabet.normalize(c))) {
            ++counts[*index];
            ++total;
        }
    }
    if (total == 0) throw EmptySample("text contains no alphabet symbols (empty sample)");
    std::map<char, double> entries;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        entries[alphabet.symbol_at(i)] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
    // from_weights absorbs rounding in the division
    return FrequencyTable::from_weights(alphabet, entries);
}

std::vector<std::pair<char, double>> sort_by_frequency(const FrequencyTable& table) {
    std::vector<std::pair<char, double>> rows;
    rows.reserve(table.alphabet().size());
    for (std::size_t i = 0; i < table.alphabet().size(); ++i) {
        rows.emplace_back(table.alphabet().symbol_at(i), table.at_index(i));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return rows;
}

std::vector<HistogramRow> histogram_rows(const FrequencyTable& table, std::size_t width) {
    if (width < 1) throw OutOfRange("histogram width must be at least 1");
    const auto& values = table.values();
    const double max_value = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    std::vector<HistogramRow> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::size_t bar = 0;
        if (max_value > 0.0) {
            bar = static_cast<std::size_t>(std::llround(values[i] / max_value * static_cast<double>(width)));
        }
        rows.push_back({table.alphabet().symbol_at(i), bar, values[i]});
    }
    return rows;
}

std::string render_histogram(const std::vector<HistogramRow>& rows) {
    std::size_t width = 0;
    for (const auto& row : rows) width = std::max(width, row.bar_length);
    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    for (const auto& row : rows) {
        out << row.symbol << " |" << std::string(row.bar_length, '#') << std::string(width - row.bar_length, ' ')
            << "| " << std::setw(5) << row.frequency * 100.0 << "%\n";
    }
    return out.str();
}

double chi_squared(const FrequencyTable& observed, const FrequencyTable& expected) {
    if (!(observed.alphabet() == expected.alphabet())) {
        throw InvalidKey("chi-squared needs tables over the same alphabet");
    }
    double score = 0.0;
    for (std::size_t i = 0; i < observed.values().size(); ++i) {
        const double o = observed.at_index(i);
        const double e = expected.at_index(i);
        if (e == 0.0) {
            if (o != 0.0) score += o * o / zero_expectation_floor;
            continue;
        }
        const double diff = o - e;
        score += diff * diff / e;
    }
    return score;
}

}  // namespace cryptolab

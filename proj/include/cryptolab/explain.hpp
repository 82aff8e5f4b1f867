#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cryptolab/dh.hpp"

namespace cryptolab {

/// What one party did during an exchange, as far as it is known.
struct PartyRecord {
    std::string name;
    std::optional<std::uint64_t> secret;
    std::optional<std::uint64_t> public_value;   // what the party sent
    std::optional<std::uint64_t> received_peer;  // what it received; defaults to the other party's public value
};

/// Everything needed to reveal the arithmetic behind a color exchange.
struct ExchangeRecord {
    std::optional<DhParams> params;
    PartyRecord first{"Alice", {}, {}, {}};
    PartyRecord second{"Bob", {}, {}, {}};
};

struct ExplainStep {
    std::size_t number = 0;  // 1-based
    std::string title;
    std::optional<std::uint64_t> value;
    std::optional<ColorSwatch> color;
    std::string formula;  // e.g. "5^4 mod 23 = 4"
    bool complete = true;

    bool operator==(const ExplainStep&) const = default;
};

/// The reveal: pairs every color of the exchange with its number and the
/// formula that produced it. Six steps for a full exchange (modulus, starting
/// color, both public colors, both shared colors). An incomplete record yields
/// the steps before the first gap followed by one step marked incomplete.
std::vector<ExplainStep> dh_transcript_explain(const ExchangeRecord& record);

std::string render_explanation(const std::vector<ExplainStep>& steps);

}  // namespace cryptolab

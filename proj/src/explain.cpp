#include "cryptolab/explain.hpp"

#include <sstream>

#include "cryptolab/modmath.hpp"

namespace cryptolab {
namespace {

std::string power_formula(std::uint64_t base, std::uint64_t exponent, std::uint64_t p, std::uint64_t result) {
    return std::to_string(base) + "^" + std::to_string(exponent) + " mod " + std::to_string(p) + " = " +
           std::to_string(result);
}

bool is_blank(const ExchangeRecord& r) {
    auto blank = [](const PartyRecord& party) {
        return !party.secret && !party.public_value && !party.received_peer;
    };
    return !r.params && blank(r.first) && blank(r.second);
}

}  // namespace

std::vector<ExplainStep> dh_transcript_explain(const ExchangeRecord& record) {
    std::vector<ExplainStep> steps;
    if (is_blank(record)) return steps;

    auto gap = [&steps](std::string title, std::string missing) {
        ExplainStep step;
        step.number = steps.size() + 1;
        step.title = std::move(title);
        step.formula = "missing: " + std::move(missing);
        step.complete = false;
        steps.push_back(std::move(step));
        return steps;
    };

    if (!record.params) return gap("Public modulus", "the agreed parameters");
    const DhParams& params = *record.params;
    const auto p = params.p();
    const auto g = params.g();

    steps.push_back({1, "Public modulus", p, std::nullopt, "p = " + std::to_string(p), true});
    steps.push_back({2, "Shared starting color", g, residue_to_color(g, params), "g = " + std::to_string(g), true});

    const PartyRecord* parties[] = {&record.first, &record.second};
    for (const auto* party : parties) {
        const std::string title = party->name + "'s public color";
        if (!party->secret) return gap(title, party->name + "'s secret");
        if (!party->public_value) return gap(title, party->name + "'s public value");
        const auto computed = modpow(g, *party->secret, p);
        ExplainStep step{steps.size() + 1, title, *party->public_value, residue_to_color(*party->public_value % p, params),
                         power_formula(g, *party->secret, p, computed), true};
        if (computed != *party->public_value) step.formula += " (but sent " + std::to_string(*party->public_value) + ")";
        steps.push_back(std::move(step));
    }

    for (std::size_t i = 0; i < 2; ++i) {
        const PartyRecord& self = *parties[i];
        const PartyRecord& other = *parties[1 - i];
        const std::string title = self.name + "'s shared color";
        const auto received = self.received_peer ? self.received_peer : other.public_value;
        if (!received) return gap(title, "the public value " + self.name + " received");
        const auto shared = modpow(*received, *self.secret, p);
        steps.push_back({steps.size() + 1, title, shared, residue_to_color(shared, params),
                         power_formula(*received, *self.secret, p, shared), true});
    }
    return steps;
}

std::string render_explanation(const std::vector<ExplainStep>& steps) {
    std::ostringstream out;
    for (const auto& step : steps) {
        out << step.number << ". " << step.title << ": ";
        if (step.value) out << *step.value;
        if (step.color) out << " [" << step.color->css() << "]";
        out << "  " << step.formula;
        if (!step.complete) out << "  (INCOMPLETE)";
        out << '\n';
    }
    return out.str();
}

}  // namespace cryptolab

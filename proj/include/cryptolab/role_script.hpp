#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cryptolab/dh_session.hpp"
#include "cryptolab/explain.hpp"

namespace cryptolab {

enum class ExpectedAction { propose_params, pick_secret, send_public, receive_public, compute_shared, reveal };

std::string to_string(ExpectedAction action);

struct ScriptStep {
    std::string prompt;
    ExpectedAction action;
    std::string validation;  // what makes the step's input acceptable
};

enum class ScriptRole { initiator, responder };

/// The guided walk through one side of the color exchange. Prompts talk about
/// colors only; the numbers and formulas appear at the final reveal step.
struct RoleScript {
    ScriptRole role;
    std::vector<ScriptStep> steps;
};

RoleScript standard_role_script(ScriptRole role);

/// Drives a participant through a RoleScript. Steps advance only on the
/// expected action, and only when the state machine accepts it.
class RoleScriptRunner {
public:
    RoleScriptRunner(RoleScript script, ParticipantState state);

    const ScriptStep& current_step() const;
    std::size_t step_index() const noexcept { return index_; }
    bool at_reveal() const;
    const ParticipantState& state() const noexcept { return state_; }

    struct Outcome {
        bool accepted;
        std::string message;  // validation message when rejected
        std::vector<WireMessage> outgoing;
    };

    Outcome act(const LocalAction& action);
    /// Feeds a channel message to the state machine; never advances the script.
    Outcome observe(const WireMessage& message);

    /// Only available at the reveal step.
    std::vector<ExplainStep> reveal(const ExchangeRecord& record) const;

private:
    RoleScript script_;
    ParticipantState state_;
    std::size_t index_ = 0;
};

std::optional<ExpectedAction> expected_for(const LocalAction& action);

/// Record of the exchange from the two participants' states, for the reveal.
ExchangeRecord exchange_record(const ParticipantState& first, const ParticipantState& second);

}  // namespace cryptolab

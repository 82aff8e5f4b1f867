#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cryptolab/wire.hpp"

namespace cryptolab {

struct Challenge {
    std::string text;
    Json data = Json::object();
};

/// A playground: the operations a lesson exposes, the task, and how answers
/// are judged. The checker object holds the expected answer and never leaves
/// the server.
///
/// Checker rules:
///   exact       {"expected": string}                   answer string, whitespace-trimmed
///   caesar_key  {"plaintext", "ciphertext"}            shift that re-encrypts plaintext to ciphertext
///   rail_key    {"plaintext", "ciphertext"}            rail count, likewise
///   otp_key     {"plaintext", "ciphertext"}            pad, likewise
///   dh_shared   {"p", "g", "public_a", "public_b"}     the shared value behind the two public values
///   factor      {"n"}                                  two factors > 1 whose product is n
struct ScenarioConfig {
    std::string name;
    std::string narrative;
    int milestone = 0;
    std::vector<std::string> allowed_ops;
    Challenge challenge;
    Json checker = Json::object();
    /// "dh_exchange" for rooms that run the guided color exchange.
    std::string activity;
};

/// Validates: non-empty name, allowed_ops drawn from suite_operations(), a
/// known checker rule with its fields. Throws InvalidKey.
ScenarioConfig scenario_from_json(const Json& json);
Json to_json(const ScenarioConfig& config);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// What participants get: everything except the checker, plus the role
/// scripts for a dh_exchange activity.
Json public_view(const ScenarioConfig& config);

struct Submission {
    Json answer;  // null when nothing was submitted
    std::vector<std::string> ops_used;
};

struct Verdict {
    bool pass = false;
    std::string reason;
    std::string detail;
};

inline constexpr const char* reason_playground = "operation not in playground";
inline constexpr const char* reason_no_answer = "no answer";

Verdict scenario_check(const ScenarioConfig& config, const Submission& submission);

/// Runs whitelisted operations and remembers which ones were used.
class Playground {
public:
    explicit Playground(ScenarioConfig config) : config_(std::move(config)) {}

    const ScenarioConfig& config() const noexcept { return config_; }
    bool allows(const std::string& op) const;
    /// Throws InvalidKey with reason_playground for an operation outside the whitelist.
    Json call(const std::string& op, const Json& args);
    const std::vector<std::string>& ops_used() const noexcept { return ops_used_; }
    Verdict submit(Json answer) const;

private:
    ScenarioConfig config_;
    std::vector<std::string> ops_used_;
};

}  // namespace cryptolab

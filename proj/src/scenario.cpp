#include "cryptolab/scenario.hpp"

#include <algorithm>
#include <fstream>

#include "cryptolab/classical.hpp"
#include "cryptolab/error.hpp"
#include "cryptolab/frequency.hpp"
#include "cryptolab/modmath.hpp"
#include "cryptolab/operations.hpp"
#include "cryptolab/role_script.hpp"

namespace cryptolab {
namespace {

const std::vector<std::string> rules = {"exact", "caesar_key", "rail_key", "otp_key", "dh_shared", "factor"};

void require_fields(const Json& checker, std::initializer_list<const char*> fields) {
    for (const char* f : fields) {
        if (!checker.contains(f)) {
            throw InvalidKey("checker rule '" + checker.at("rule").get<std::string>() + "' needs field '" + f + "'");
        }
    }
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

bool empty_answer(const Json& answer) {
    if (answer.is_null()) return true;
    if (answer.is_string()) return trim(answer.get<std::string>()).empty();
    if (answer.is_array() || answer.is_object()) return answer.empty();
    return false;
}

// Accepts 3 or "3".
std::optional<long long> integer_answer(const Json& answer) {
    if (answer.is_number_integer()) return answer.get<long long>();
    if (answer.is_string()) {
        const std::string s = trim(answer.get<std::string>());
        if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
            return std::nullopt;
        }
        return std::stoll(s);
    }
    return std::nullopt;
}

// Accepts [a, b], "a*b", "a,b" or "a x b".
std::optional<std::pair<std::uint64_t, std::uint64_t>> factor_answer(const Json& answer) {
    std::vector<long long> parts;
    if (answer.is_array()) {
        for (const auto& v : answer) {
            const auto n = integer_answer(v);
            if (!n) return std::nullopt;
            parts.push_back(*n);
        }
    } else if (answer.is_string()) {
        std::string s = answer.get<std::string>();
        std::replace_if(s.begin(), s.end(), [](char c) { return c == '*' || c == ',' || c == 'x' || c == 'X'; }, ' ');
        std::size_t pos = 0;
        while ((pos = s.find_first_not_of(' ', pos)) != std::string::npos) {
            const auto end = s.find(' ', pos);
            const auto n = integer_answer(Json(s.substr(pos, end - pos)));
            if (!n) return std::nullopt;
            parts.push_back(*n);
            pos = end;
        }
    }
    if (parts.size() != 2 || parts[0] < 2 || parts[1] < 2) return std::nullopt;
    return std::pair<std::uint64_t, std::uint64_t>(parts[0], parts[1]);
}

Verdict fail(std::string reason, std::string detail = {}) { return {false, std::move(reason), std::move(detail)}; }
Verdict pass() { return {true, "correct", {}}; }

Verdict check_answer(const Json& checker, const Json& answer) {
    const auto rule = checker.at("rule").get<std::string>();
    const auto wrong = [] { return fail("wrong answer"); };
    try {
        if (rule == "exact") {
            if (!answer.is_string()) return fail("answer must be text");
            return trim(answer.get<std::string>()) == checker.at("expected").get<std::string>() ? pass() : wrong();
        }
        const auto plain = checker.value("plaintext", std::string());
        const auto cipher = checker.value("ciphertext", std::string());
        if (rule == "caesar_key") {
            const auto shift = integer_answer(answer);
            if (!shift) return fail("answer must be a whole number");
            return caesar_encrypt(plain, ShiftKey::normalized(*shift)) == cipher ? pass() : wrong();
        }
        if (rule == "rail_key") {
            const auto rails = integer_answer(answer);
            if (!rails || *rails < 2) return fail("answer must be a rail count of at least 2");
            return railfence_encrypt(plain, RailKey{static_cast<std::size_t>(*rails)}) == cipher ? pass() : wrong();
        }
        if (rule == "otp_key") {
            if (!answer.is_string()) return fail("answer must be a pad of letters");
            const std::string key = normalize_text(trim(answer.get<std::string>()));
            return otp_encrypt(plain, PadKey{key}, latin_alphabet(), TextMode::strict) == cipher ? pass() : wrong();
        }
        if (rule == "dh_shared") {
            const auto value = integer_answer(answer);
            if (!value) return fail("answer must be a whole number");
            const auto p = checker.at("p").get<std::uint64_t>();
            const auto g = checker.at("g").get<std::uint64_t>();
            const auto a = discrete_log_bruteforce(g, checker.at("public_a").get<std::uint64_t>(), p);
            if (!a) return fail("the challenge has no solution");
            const auto shared = modpow(checker.at("public_b").get<std::uint64_t>(), *a, p);
            return static_cast<std::uint64_t>(*value) == shared ? pass() : wrong();
        }
        if (rule == "factor") {
            const auto factors = factor_answer(answer);
            if (!factors) return fail("answer must be two factors, like 7*11");
            return factors->first * factors->second == checker.at("n").get<std::uint64_t>() ? pass() : wrong();
        }
    } catch (const Error&) {
        return wrong();
    }
    return fail("unknown checker rule");
}

}  // namespace

ScenarioConfig scenario_from_json(const Json& json) {
    if (!json.is_object()) throw InvalidKey("a scenario is a JSON object");
    ScenarioConfig c;
    try {
        c.name = json.at("name").get<std::string>();
        c.narrative = json.value("narrative", std::string());
        c.milestone = json.value("milestone", 0);
        c.activity = json.value("activity", std::string());
        c.allowed_ops = json.at("allowed_ops").get<std::vector<std::string>>();
        const Json& challenge = json.at("challenge");
        c.challenge.text = challenge.at("text").get<std::string>();
        c.challenge.data = challenge.value("data", Json::object());
        c.checker = json.at("checker");
    } catch (const nlohmann::json::exception& e) {
        throw InvalidKey(std::string("scenario: ") + e.what());
    }
    if (c.name.empty()) throw InvalidKey("scenario needs a name");
    for (const auto& op : c.allowed_ops) {
        if (!find_operation(op)) throw InvalidKey("scenario '" + c.name + "' allows unknown operation '" + op + "'");
    }
    if (!c.checker.is_object() || !c.checker.contains("rule") || !c.checker.at("rule").is_string()) {
        throw InvalidKey("scenario '" + c.name + "' needs a checker with a rule");
    }
    const auto rule = c.checker.at("rule").get<std::string>();
    if (std::find(rules.begin(), rules.end(), rule) == rules.end()) {
        throw InvalidKey("scenario '" + c.name + "' has unknown checker rule '" + rule + "'");
    }
    if (rule == "exact") require_fields(c.checker, {"expected"});
    if (rule == "caesar_key" || rule == "rail_key" || rule == "otp_key") require_fields(c.checker, {"plaintext", "ciphertext"});
    if (rule == "dh_shared") require_fields(c.checker, {"p", "g", "public_a", "public_b"});
    if (rule == "factor") require_fields(c.checker, {"n"});
    if (!c.activity.empty() && c.activity != "dh_exchange") {
        throw InvalidKey("scenario '" + c.name + "' has unknown activity '" + c.activity + "'");
    }
    return c;
}

Json to_json(const ScenarioConfig& c) {
    Json out{{"name", c.name}, {"milestone", c.milestone}, {"narrative", c.narrative}, {"allowed_ops", c.allowed_ops},
             {"challenge", {{"text", c.challenge.text}, {"data", c.challenge.data}}}, {"checker", c.checker}};
    if (!c.activity.empty()) out["activity"] = c.activity;
    return out;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidKey("cannot open scenario file " + path.string());
    try {
        return scenario_from_json(Json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidKey(path.string() + ": " + e.what());
    }
}

Json public_view(const ScenarioConfig& c) {
    Json out = to_json(c);
    out.erase("checker");
    if (c.activity == "dh_exchange") {
        Json scripts = Json::object();
        for (auto role : {ScriptRole::initiator, ScriptRole::responder}) {
            Json steps = Json::array();
            for (const auto& step : standard_role_script(role).steps) {
                steps.push_back({{"prompt", step.prompt}, {"action", to_string(step.action)}, {"validation", step.validation}});
            }
            scripts[role == ScriptRole::initiator ? "initiator" : "responder"] = steps;
        }
        out["role_scripts"] = scripts;
    }
    return out;
}

Verdict scenario_check(const ScenarioConfig& config, const Submission& submission) {
    for (const auto& op : submission.ops_used) {
        if (std::find(config.allowed_ops.begin(), config.allowed_ops.end(), op) == config.allowed_ops.end()) {
            return fail(reason_playground, op);
        }
    }
    if (empty_answer(submission.answer)) return fail(reason_no_answer);
    return check_answer(config.checker, submission.answer);
}

bool Playground::allows(const std::string& op) const {
    return std::find(config_.allowed_ops.begin(), config_.allowed_ops.end(), op) != config_.allowed_ops.end();
}

Json Playground::call(const std::string& op, const Json& args) {
    if (!allows(op)) throw InvalidKey(std::string(reason_playground) + ": " + op);
    ops_used_.push_back(op);
    return run_operation(op, args);
}

Verdict Playground::submit(Json answer) const { return scenario_check(config_, {std::move(answer), ops_used_}); }

}  // namespace cryptolab

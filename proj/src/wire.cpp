#include "cryptolab/wire.hpp"

#include <array>

#include "cryptolab/error.hpp"

namespace cryptolab {
namespace {

constexpr std::array<std::pair<MessageType, std::string_view>, 10> type_names{{
    {MessageType::join, "join"},
    {MessageType::leave, "leave"},
    {MessageType::chat, "chat"},
    {MessageType::dh_params, "dh_params"},
    {MessageType::dh_public, "dh_public"},
    {MessageType::dh_done, "dh_done"},
    {MessageType::scenario, "scenario"},
    {MessageType::error, "error"},
    {MessageType::ping, "ping"},
    {MessageType::pong, "pong"},
}};

template <class T>
T required(const Json& json, const char* field) {
    const auto it = json.find(field);
    if (it == json.end()) throw ProtocolError(std::string("missing field '") + field + "'");
    try {
        return it->template get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ProtocolError(std::string("field '") + field + "' has the wrong type");
    }
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (const auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw ProtocolError("hex body has odd length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ProtocolError(std::string("bad hex digit '") + c + "'");
    };
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        out.push_back(static_cast<std::uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
    }
    return out;
}

}  // namespace

std::string to_string(MessageType type) {
    for (const auto& [t, name] : type_names) {
        if (t == type) return std::string(name);
    }
    return "unknown";
}

std::optional<MessageType> parse_message_type(std::string_view name) {
    for (const auto& [t, n] : type_names) {
        if (n == name) return t;
    }
    return std::nullopt;
}

bool WireMessage::operator==(const WireMessage& other) const {
    return type == other.type && room == other.room && sender == other.sender && seq == other.seq &&
           payload == other.payload;
}

Json to_json(const WireMessage& message) {
    Json json;
    json["type"] = to_string(message.type);
    json["room"] = message.room;
    json["sender"] = message.sender;
    json["seq"] = message.seq;
    json["payload"] = message.payload;
    return json;
}

WireMessage message_from_json(const Json& json) {
    if (!json.is_object()) throw ProtocolError("message must be a JSON object");
    WireMessage message;
    const auto type_name = required<std::string>(json, "type");
    const auto type = parse_message_type(type_name);
    if (!type) throw ProtocolError("unknown message type '" + type_name + "'");
    message.type = *type;
    message.room = required<std::string>(json, "room");
    message.sender = required<std::string>(json, "sender");
    if (const auto it = json.find("seq"); it != json.end()) {
        if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
            throw ProtocolError("field 'seq' must be a non-negative integer");
        }
        message.seq = it->get<std::uint64_t>();
    }
    if (const auto it = json.find("payload"); it != json.end() && !it->is_null()) {
        if (!it->is_object()) throw ProtocolError("field 'payload' must be an object");
        message.payload = *it;
    }
    return message;
}

std::string encode_line(const WireMessage& message) { return to_json(message).dump(); }

WireMessage decode_line(std::string_view line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
    Json json;
    try {
        json = Json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
        throw ProtocolError("not a JSON message: '" + std::string(line.substr(0, 60)) + "'");
    }
    return message_from_json(json);
}

WireMessage make_join(std::string room, std::string sender, Json payload) {
    return {MessageType::join, std::move(room), std::move(sender), 0, std::move(payload)};
}

WireMessage make_leave(std::string room, std::string sender) {
    return {MessageType::leave, std::move(room), std::move(sender), 0, Json::object()};
}

WireMessage make_chat(std::string room, std::string sender, std::string text) {
    Json payload;
    payload["text"] = std::move(text);
    return {MessageType::chat, std::move(room), std::move(sender), 0, std::move(payload)};
}

WireMessage make_dh_params(std::string room, std::string sender, const DhParams& params) {
    return {MessageType::dh_params, std::move(room), std::move(sender), 0, to_json(params)};
}

WireMessage make_dh_public(std::string room, std::string sender, std::uint64_t value, const DhParams& params) {
    Json payload;
    payload["value"] = value;
    payload["color"] = to_json(residue_to_color(value, params));
    return {MessageType::dh_public, std::move(room), std::move(sender), 0, std::move(payload)};
}

WireMessage make_dh_done(std::string room, std::string sender) {
    return {MessageType::dh_done, std::move(room), std::move(sender), 0, Json::object()};
}

WireMessage make_error(std::string room, std::uint64_t seq, std::string reason) {
    Json payload;
    payload["reason"] = std::move(reason);
    return {MessageType::error, std::move(room), "server", seq, std::move(payload)};
}

Json to_json(const ColorSwatch& color) {
    Json json;
    json["residue"] = color.residue;
    json["hue"] = color.hue;
    json["saturation"] = color.saturation;
    json["lightness"] = color.lightness;
    return json;
}

Json to_json(const DhParams& params) {
    Json json;
    json["p"] = params.p();
    json["g"] = params.g();
    return json;
}

DhParams params_from_json(const Json& json) {
    const auto p = required<std::uint64_t>(json, "p");
    const auto g = required<std::uint64_t>(json, "g");
    try {
        return DhParams(p, g, p <= DhParams::classroom_max_modulus ? ParamMode::classroom : ParamMode::demo);
    } catch (const Error& e) {
        throw ProtocolError(std::string("bad parameters: ") + e.what());
    }
}

std::uint64_t dh_public_value(const WireMessage& message) {
    if (message.type != MessageType::dh_public) throw ProtocolError("not a dh_public message");
    return required<std::uint64_t>(message.payload, "value");
}

Json to_json(const HybridEnvelope& envelope) {
    Json json;
    json["wrapped_key"] = envelope.wrapped_key;
    json["body"] = to_hex(envelope.body);
    if (envelope.signature) json["signature"] = *envelope.signature;
    return json;
}

HybridEnvelope envelope_from_json(const Json& json) {
    if (!json.is_object()) throw ProtocolError("envelope must be a JSON object");
    HybridEnvelope envelope;
    envelope.wrapped_key = required<std::uint64_t>(json, "wrapped_key");
    envelope.body = from_hex(required<std::string>(json, "body"));
    if (const auto it = json.find("signature"); it != json.end() && !it->is_null()) {
        envelope.signature = required<std::uint64_t>(json, "signature");
    }
    return envelope;
}

}  // namespace cryptolab

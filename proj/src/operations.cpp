#include "cryptolab/operations.hpp"

#include "cryptolab/classical.hpp"
#include "cryptolab/cryptanalysis.hpp"
#include "cryptolab/error.hpp"
#include "cryptolab/frequency.hpp"
#include "cryptolab/modmath.hpp"
#include "cryptolab/rsa.hpp"
#include "cryptolab/toyblock.hpp"
#include "cryptolab/work_counter.hpp"

namespace cryptolab {
namespace {

template <typename T>
T arg(const Json& args, const char* key) {
    if (!args.is_object() || !args.contains(key)) throw InvalidKey(std::string("missing argument '") + key + "'");
    try {
        return args.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidKey(std::string("argument '") + key + "' has the wrong type");
    }
}

std::uint64_t number(const Json& args, const char* key) {
    const Json& v = args.is_object() && args.contains(key) ? args.at(key) : Json();
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw InvalidKey(std::string("argument '") + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

Json frequencies_json(const FrequencyTable& table) {
    Json out = Json::object();
    for (std::size_t i = 0; i < table.alphabet().size(); ++i) {
        out[std::string(1, table.alphabet().symbol_at(i))] = table.at_index(i);
    }
    return out;
}

FrequencyTable frequencies_from(const Json& args) {
    const Json& f = args.is_object() && args.contains("frequencies") ? args.at("frequencies") : Json();
    if (!f.is_object()) throw InvalidKey("argument 'frequencies' must map letters to numbers");
    std::map<char, double> weights;
    for (const auto& [k, v] : f.items()) {
        if (k.size() != 1 || !v.is_number()) throw InvalidKey("argument 'frequencies' must map letters to numbers");
        weights[k[0]] = v.get<double>();
    }
    return FrequencyTable::from_weights(latin_alphabet(), weights);
}

ToyBlockKey block_key(const Json& args) {
    const auto keys = arg<std::vector<int>>(args, "round_keys");
    std::vector<std::uint8_t> rounds;
    for (int k : keys) {
        if (k < 0 || k > 255) throw InvalidKey("round keys are 8-bit values");
        rounds.push_back(static_cast<std::uint8_t>(k));
    }
    BitPermutation perm = nibble_swap();
    if (args.contains("permutation")) {
        const auto p = arg<std::vector<int>>(args, "permutation");
        if (p.size() != 8) throw InvalidKey("a bit permutation has 8 entries");
        for (std::size_t i = 0; i < 8; ++i) {
            if (p[i] < 0 || p[i] > 7) throw InvalidKey("bit positions run from 0 to 7");
            perm[i] = static_cast<std::uint8_t>(p[i]);
        }
    }
    return ToyBlockKey(std::move(rounds), perm);
}

std::uint8_t block_arg(const Json& args) {
    const auto b = number(args, "block");
    if (b > 255) throw InvalidKey("a block is an 8-bit value");
    return static_cast<std::uint8_t>(b);
}

Json color_json(std::uint64_t residue, std::uint64_t p) { return to_json(residue_to_color(residue, p)); }

std::vector<Operation> build() {
    std::vector<Operation> ops;
    auto add = [&ops](std::string name, std::string summary, std::function<Json(const Json&)> run) {
        ops.push_back({std::move(name), std::move(summary), std::move(run)});
    };

    add("caesar_encrypt", "shift every letter forward", [](const Json& a) {
        return Json{{"text", caesar_encrypt(arg<std::string>(a, "text"), ShiftKey::normalized(arg<long long>(a, "shift")))}};
    });
    add("caesar_decrypt", "shift every letter back", [](const Json& a) {
        return Json{{"text", caesar_decrypt(arg<std::string>(a, "text"), ShiftKey::normalized(arg<long long>(a, "shift")))}};
    });
    add("caesar_bruteforce", "try all 26 shifts", [](const Json& a) {
        Json list = Json::array();
        for (const auto& c : caesar_bruteforce(arg<std::string>(a, "text"))) {
            list.push_back({{"shift", c.shift.shift}, {"plaintext", c.plaintext}});
        }
        return Json{{"candidates", list}};
    });
    add("caesar_frequency_attack", "rank shifts by closeness to English", [](const Json& a) {
        Json list = Json::array();
        for (const auto& r : caesar_frequency_attack(arg<std::string>(a, "text")).entries) {
            list.push_back({{"shift", r.shift.shift}, {"score", r.score}, {"preview", r.preview}});
        }
        return Json{{"ranked", list}};
    });
    add("letter_frequencies", "relative frequency of each letter", [](const Json& a) {
        return Json{{"frequencies", frequencies_json(letter_frequencies(arg<std::string>(a, "text")))}};
    });
    add("english_frequencies", "average letter frequencies of English", [](const Json&) {
        return Json{{"frequencies", frequencies_json(english_frequencies())}};
    });
    add("sort_by_frequency", "letters from most to least frequent", [](const Json& a) {
        Json list = Json::array();
        for (const auto& [symbol, f] : sort_by_frequency(frequencies_from(a))) {
            list.push_back({{"symbol", std::string(1, symbol)}, {"frequency", f}});
        }
        return Json{{"sorted", list}};
    });
    add("histogram_rows", "bars for a frequency table", [](const Json& a) {
        const std::size_t width = a.contains("width") ? number(a, "width") : 40;
        Json list = Json::array();
        for (const auto& row : histogram_rows(frequencies_from(a), width)) {
            list.push_back({{"symbol", std::string(1, row.symbol)}, {"bar_length", row.bar_length}, {"frequency", row.frequency}});
        }
        return Json{{"rows", list}};
    });
    add("railfence_encrypt", "zigzag write, read by rows", [](const Json& a) {
        return Json{{"text", railfence_encrypt(arg<std::string>(a, "text"), RailKey{number(a, "rails")})}};
    });
    add("railfence_decrypt", "undo the zigzag", [](const Json& a) {
        return Json{{"text", railfence_decrypt(arg<std::string>(a, "text"), RailKey{number(a, "rails")})}};
    });
    add("otp_encrypt", "add the pad letter by letter", [](const Json& a) {
        return Json{{"text", otp_encrypt(arg<std::string>(a, "text"), PadKey{arg<std::string>(a, "key")})}};
    });
    add("otp_decrypt", "subtract the pad letter by letter", [](const Json& a) {
        return Json{{"text", otp_decrypt(arg<std::string>(a, "text"), PadKey{arg<std::string>(a, "key")})}};
    });
    add("otp_key_for", "the pad that turns a plaintext into a ciphertext", [](const Json& a) {
        return Json{{"key", otp_key_for(arg<std::string>(a, "plain"), arg<std::string>(a, "cipher")).symbols}};
    });
    add("chars_to_bits", "8 bits per character", [](const Json& a) {
        return Json{{"bits", chars_to_bits(arg<std::string>(a, "text"))}};
    });
    add("bits_to_chars", "characters from groups of 8 bits", [](const Json& a) {
        return Json{{"text", bits_to_chars(arg<std::string>(a, "bits"))}};
    });
    add("toyblock_encrypt", "XOR with each round key, then swap bits", [](const Json& a) {
        return Json{{"block", toyblock_encrypt(block_arg(a), block_key(a))}};
    });
    add("toyblock_decrypt", "undo the toy block rounds", [](const Json& a) {
        return Json{{"block", toyblock_decrypt(block_arg(a), block_key(a))}};
    });
    add("modpow", "base^exp mod m by square-and-multiply", [](const Json& a) {
        std::uint64_t value = 0;
        const auto work = count_work([&](WorkCounter& c) { value = modpow(number(a, "base"), number(a, "exp"), number(a, "mod"), &c); });
        return Json{{"value", value}, {"multiplications", work.modular_multiplications}};
    });
    add("is_prime", "trial division primality", [](const Json& a) { return Json{{"prime", is_prime(number(a, "n"))}}; });
    add("is_primitive_root", "whether g's powers reach every nonzero residue", [](const Json& a) {
        return Json{{"primitive_root", is_primitive_root(number(a, "g"), number(a, "p"))}};
    });
    add("trial_divide", "whether d divides n", [](const Json& a) {
        const auto n = number(a, "n");
        const auto d = number(a, "d");
        if (d == 0) throw InvalidKey("cannot divide by zero");
        return Json{{"divides", n % d == 0}, {"quotient", n / d}};
    });
    add("residue_to_color", "the color of a number", [](const Json& a) {
        return color_json(number(a, "residue"), number(a, "p"));
    });
    add("dh_public", "mix a secret into the starting color", [](const Json& a) {
        const DhParams params(number(a, "p"), number(a, "g"), number(a, "p") <= 100 ? ParamMode::classroom : ParamMode::demo);
        const auto pair = DhKeyPair::from_secret(params, number(a, "secret"));
        return Json{{"value", pair.public_value()}, {"color", to_json(residue_to_color(pair.public_value(), params))}};
    });
    add("dh_shared_secret", "mix a secret into the partner's color", [](const Json& a) {
        const DhParams params(number(a, "p"), number(a, "g"), number(a, "p") <= 100 ? ParamMode::classroom : ParamMode::demo);
        const auto pair = DhKeyPair::from_secret(params, number(a, "secret"));
        const auto shared = dh_shared_secret(pair, number(a, "peer_public"), params);
        return Json{{"value", shared.value}, {"color", to_json(residue_to_color(shared.value, params))}};
    });
    add("discrete_log", "find x with g^x = target by walking the powers", [](const Json& a) {
        std::optional<std::uint64_t> x;
        const auto work = count_work(
            [&](WorkCounter& c) { x = discrete_log_bruteforce(number(a, "g"), number(a, "target"), number(a, "p"), &c); });
        return Json{{"exponent", x ? Json(*x) : Json()}, {"multiplications", work.modular_multiplications}};
    });
    add("rsa_keygen", "toy key pair from two primes", [](const Json& a) {
        const auto pair = rsa_keygen(number(a, "p"), number(a, "q"), number(a, "e"));
        return Json{{"n", pair.n}, {"e", pair.e}, {"d", pair.d}};
    });
    add("public_transform", "m^e mod n", [](const Json& a) {
        return Json{{"value", public_transform(number(a, "m"), {number(a, "n"), number(a, "e")})}};
    });
    add("private_transform", "c^d mod n", [](const Json& a) {
        const auto pair = rsa_keygen(number(a, "p"), number(a, "q"), number(a, "e"));
        return Json{{"value", private_transform(number(a, "c"), pair)}};
    });
    add("hybrid_open", "unwrap the key, then decrypt the body", [](const Json& a) {
        const auto pair = rsa_keygen(number(a, "p"), number(a, "q"), number(a, "e"));
        if (!a.contains("envelope")) throw InvalidKey("missing argument 'envelope'");
        const auto opened = hybrid_open(envelope_from_json(a.at("envelope")), pair, std::nullopt);
        return Json{{"message", opened.message}, {"authenticity", to_string(opened.authenticity)}};
    });
    add("oneway_demo", "multiplying versus factoring", [](const Json& a) {
        const auto r = oneway_demo(number(a, "a"), number(a, "b"));
        return Json{{"product", r.product}, {"multiply_steps", r.multiply_steps}, {"factor_steps", r.factor_steps}};
    });
    return ops;
}

}  // namespace

const std::vector<Operation>& suite_operations() {
    static const std::vector<Operation> ops = build();
    return ops;
}

const Operation* find_operation(std::string_view name) {
    for (const auto& op : suite_operations()) {
        if (op.name == name) return &op;
    }
    return nullptr;
}

Json run_operation(std::string_view name, const Json& args) {
    const Operation* op = find_operation(name);
    if (!op) throw InvalidKey("unknown operation '" + std::string(name) + "'");
    return op->run(args);
}

}  // namespace cryptolab

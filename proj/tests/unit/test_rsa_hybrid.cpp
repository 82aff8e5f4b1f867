#include <doctest.h>

#include <array>

#include "../support.hpp"
#include "cryptolab/error.hpp"
#include "cryptolab/hybrid.hpp"
#include "cryptolab/modmath.hpp"
#include "cryptolab/rsa.hpp"

using namespace cryptolab;

TEST_CASE("rsa key generation known answers") {
    const auto k = rsa_keygen(3, 11, 3);
    CHECK(k.n == 33);
    CHECK(k.phi() == 20);
    CHECK(k.d == 7);
    const auto k2 = rsa_keygen(61, 53, 17);
    CHECK(k2.n == 3233);
    CHECK(k2.d == 2753);
}

TEST_CASE("rsa d matches a brute-force inverse") {
    const std::uint64_t primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    for (auto p : primes)
        for (auto q : primes) {
            if (p == q) continue;
            const std::uint64_t phi = (p - 1) * (q - 1);
            for (std::uint64_t e = 3; e < phi; e += 2) {
                if (gcd(e, phi) != 1) continue;
                const auto inv = oracle::brute_inverse(e, phi);
                                const auto k = rsa_keygen(p, q, e);
                CHECK(k.d == inv);
                CHECK((k.d * e) % phi == 1);
            }
        }
}

TEST_CASE("rsa rejects bad inputs") {
    CHECK_THROWS_AS(rsa_keygen(4, 11, 3), InvalidKey);
    CHECK_THROWS_AS(rsa_keygen(11, 11, 3), InvalidKey);
    CHECK_THROWS_AS(rsa_keygen(3, 11, 5), InvalidKey);
    CHECK_THROWS_AS(public_transform(33, ToyRsaPublicKey{33, 3}), OutOfRange);
}

TEST_CASE("rsa round trips exhaustively in both directions for n = 33 and 65") {
    for (const auto& [p, q, e] : std::array<std::array<std::uint64_t, 3>, 2>{{{3, 11, 3}, {5, 13, 5}}}) {
        const auto k = rsa_keygen(p, q, e);
        for (std::uint64_t m = 0; m < k.n; ++m) {
            CHECK(private_transform(public_transform(m, k.public_key()), k) == m);
            CHECK(public_transform(private_transform(m, k), k.public_key()) == m);
            CHECK(public_transform(m, k.public_key()) == oracle::naive_modpow(m, k.e, k.n));
        }
    }
}

TEST_CASE("one-way demo counts multiplying against factoring") {
    const auto r = oneway_demo(101, 103);
    CHECK(r.product == 10403);
    CHECK(r.multiply_steps == 1);
    CHECK(r.factor_steps == 100);
    CHECK(r.recovered_factor == 101);
    CHECK(r.factor_steps > r.multiply_steps);
    CHECK_THROWS_AS(oneway_demo(100, 103), InvalidKey);
    CHECK_THROWS_AS(oneway_demo(101, 101), InvalidKey);
}

TEST_CASE("body checksum changes under every single-bit flip") {
    gen::Engine rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint8_t> body(1 + gen::below(rng, 16));
        for (auto& b : body) b = static_cast<std::uint8_t>(gen::below(rng, 256));
        const auto base = body_checksum(body, 3233);
        for (std::size_t i = 0; i < body.size(); ++i)
            for (int bit = 0; bit < 8; ++bit) {
                auto flipped = body;
                flipped[i] ^= static_cast<std::uint8_t>(1u << bit);
                CHECK(body_checksum(flipped, 3233) != base);
            }
    }
}

TEST_CASE("hybrid seal and open") {
    const auto recipient = rsa_keygen(61, 53, 17);
    const auto sender = rsa_keygen(89, 97, 5);
    const auto env = hybrid_seal("SALVE", recipient.public_key(), sender, 42);
    CHECK(env.body.size() == 5);
    REQUIRE(env.signature.has_value());

    const auto ok = hybrid_open(env, recipient, sender.public_key());
    CHECK(ok.message == "SALVE");
    CHECK(ok.authenticity == Authenticity::verified);
    CHECK(hybrid_open(env, recipient, std::nullopt).authenticity == Authenticity::unverified);

    const auto unsigned_env = hybrid_seal("SALVE", recipient.public_key(), std::nullopt, 42);
    CHECK_FALSE(unsigned_env.signature.has_value());
    CHECK(hybrid_open(unsigned_env, recipient, std::nullopt).message == "SALVE");
}

TEST_CASE("hybrid detects any single-bit body tamper") {
    const auto recipient = rsa_keygen(61, 53, 17);
    const auto sender = rsa_keygen(89, 97, 5);
    const auto env = hybrid_seal("SALVE", recipient.public_key(), sender, 42);
    for (std::size_t i = 0; i < env.body.size(); ++i)
        for (int bit = 0; bit < 8; ++bit) {
            auto bad = env;
            bad.body[i] ^= static_cast<std::uint8_t>(1u << bit);
            CHECK(hybrid_open(bad, recipient, sender.public_key()).authenticity == Authenticity::failed);
        }
    CHECK(to_string(Authenticity::failed) == "FAILED");
}

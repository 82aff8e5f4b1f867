#include "cryptolab/rsa.hpp"

#include <algorithm>

#include "cryptolab/error.hpp"
#include "cryptolab/modmath.hpp"

namespace cryptolab {

ToyRsaKeyPair rsa_keygen(std::uint64_t p, std::uint64_t q, std::uint64_t e) {
    if (!is_prime(p)) throw InvalidKey(std::to_string(p) + " is not prime");
    if (!is_prime(q)) throw InvalidKey(std::to_string(q) + " is not prime");
    if (p == q) throw InvalidKey("p and q must be distinct (p = q = " + std::to_string(p) + ")");
    const std::uint64_t n = p * q;
    if (n >= toy_rsa_max_modulus) throw InvalidKey("modulus p*q must stay below 2^31");
    const std::uint64_t phi = (p - 1) * (q - 1);
    if (e <= 1 || e >= phi) {
        throw InvalidKey("public exponent must lie in (1, " + std::to_string(phi) + "), got " + std::to_string(e));
    }
    if (const auto g = gcd(e, phi); g != 1) {
        throw InvalidKey("gcd(" + std::to_string(e) + ", " + std::to_string(phi) + ") = " + std::to_string(g) +
                         ", public exponent must be coprime to (p-1)(q-1)");
    }
    const auto d = mod_inverse(e, phi);
    if (!d) throw InvalidKey("exponent " + std::to_string(e) + " has no inverse modulo " + std::to_string(phi));
    return {p, q, n, e, *d};
}

std::uint64_t public_transform(std::uint64_t m, const ToyRsaPublicKey& key) {
    if (m >= key.n) {
        throw OutOfRange("value " + std::to_string(m) + " outside [0, " + std::to_string(key.n) + ")");
    }
    return modpow(m, key.e, key.n);
}

std::uint64_t private_transform(std::uint64_t c, const ToyRsaKeyPair& key) {
    if (c >= key.n) {
        throw OutOfRange("value " + std::to_string(c) + " outside [0, " + std::to_string(key.n) + ")");
    }
    return modpow(c, key.d, key.n);
}

OneWayReport oneway_demo(std::uint64_t a, std::uint64_t b) {
    if (!is_prime(a)) throw InvalidKey(std::to_string(a) + " is not prime");
    if (!is_prime(b)) throw InvalidKey(std::to_string(b) + " is not prime");
    if (a == b) throw InvalidKey("the two primes must be distinct");
    if (a * b >= toy_rsa_max_modulus) throw OutOfRange("product must stay below 2^31");

    OneWayReport report;
    report.a = a;
    report.b = b;
    const auto multiplied = count_work([&](WorkCounter& counter) {
        report.product = a * b;
        counter.add_multiplications(1);
    });
    const auto factored = count_work([&](WorkCounter& counter) {
        report.recovered_factor = smallest_factor(report.product, &counter);
    });
    report.multiply_steps = multiplied.multiplications;
    report.factor_steps = factored.trial_divisions;
    report.note = "multiplying took " + std::to_string(report.multiply_steps) + " step; undoing it by trial division took " +
                  std::to_string(report.factor_steps) + " steps. The gap widens as the primes grow";
    if (std::min(a, b) < 10) report.note += " (with a factor this small the gap barely shows)";
    return report;
}

}  // namespace cryptolab

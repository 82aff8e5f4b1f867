#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cryptolab/work_counter.hpp"

namespace cryptolab {

/// base^exponent mod modulus by left-to-right square-and-multiply. Counts one
/// modular multiplication per squaring and per multiply step, which is at most
/// 2 * floor(log2(exponent)) in total.
std::uint64_t modpow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus,
                     WorkCounter* counter = nullptr);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus);

/// Trial division; every n % d test is counted.
bool is_prime(std::uint64_t n, WorkCounter* counter = nullptr);

/// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Smallest divisor d >= 2 of n found by trial division from 2 upward, or n
/// itself when n is prime. Counts each division.
std::uint64_t smallest_factor(std::uint64_t n, WorkCounter* counter = nullptr);

/// True iff g has multiplicative order p - 1 modulo the prime p.
bool is_primitive_root(std::uint64_t g, std::uint64_t p);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

struct ExtendedGcd {
    std::int64_t gcd;
    std::int64_t x;  // a*x + b*y = gcd
    std::int64_t y;
};
ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b);

/// Inverse of a modulo m, if gcd(a, m) = 1.
std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t m);

/// Exhaustive discrete log: the smallest x in [1, p-1] with g^x = target (mod p).
/// Walks g, g^2, ... with one modular multiplication per step, so the worst
/// case is p - 2 multiplications.
std::optional<std::uint64_t> discrete_log_bruteforce(std::uint64_t g, std::uint64_t target, std::uint64_t p,
                                                     WorkCounter* counter = nullptr);

}  // namespace cryptolab

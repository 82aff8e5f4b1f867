#include "cryptolab/modmath.hpp"

#include <bit>

#include "cryptolab/error.hpp"

namespace cryptolab {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % modulus);
}

std::uint64_t modpow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus, WorkCounter* counter) {
    if (modulus < 2) throw OutOfRange("modulus must be at least 2, got " + std::to_string(modulus));
    if (exponent == 0) return 1 % modulus;
    base %= modulus;
    std::uint64_t result = base;
    std::uint64_t multiplications = 0;
    // the leading 1 bit is consumed by starting from `base`
    for (int bit = std::bit_width(exponent) - 2; bit >= 0; --bit) {
        result = mulmod(result, result, modulus);
        ++multiplications;
        if ((exponent >> bit) & 1u) {
            result = mulmod(result, base, modulus);
            ++multiplications;
        }
    }
    if (counter) counter->add_modular_multiplications(multiplications);
    return result;
}

bool is_prime(std::uint64_t n, WorkCounter* counter) {
    if (n < 2) return false;
    std::uint64_t divisions = 0;
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        ++divisions;
        if (n % d == 0) {
            prime = false;
            break;
        }
    }
    if (counter) counter->add_trial_divisions(divisions);
    return prime;
}

std::uint64_t smallest_factor(std::uint64_t n, WorkCounter* counter) {
    if (n < 2) throw OutOfRange("no prime factor below 2");
    std::uint64_t divisions = 0;
    std::uint64_t found = n;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        ++divisions;
        if (n % d == 0) {
            found = d;
            break;
        }
    }
    if (counter) counter->add_trial_divisions(divisions);
    return found;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> factors;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

bool is_primitive_root(std::uint64_t g, std::uint64_t p) {
    if (!is_prime(p)) throw InvalidKey(std::to_string(p) + " is not prime");
    if (g < 1 || g >= p) throw OutOfRange("candidate generator must lie in [1, p)");
    if (p == 2) return g == 1;
    for (const auto q : prime_factors(p - 1)) {
        if (modpow(g, (p - 1) / q, p) == 1) return false;
    }
    return true;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_x = 1, x = 0;
    std::int64_t old_y = 0, y = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_x -= q * x;
        std::swap(old_x, x);
        old_y -= q * y;
        std::swap(old_y, y);
    }
    return {old_r, old_x, old_y};
}

std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t m) {
    if (m < 2) return std::nullopt;
    const auto eg = extended_gcd(static_cast<std::int64_t>(a % m), static_cast<std::int64_t>(m));
    if (eg.gcd != 1) return std::nullopt;
    const auto sm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((eg.x % sm) + sm) % sm);
}

std::optional<std::uint64_t> discrete_log_bruteforce(std::uint64_t g, std::uint64_t target, std::uint64_t p,
                                                     WorkCounter* counter) {
    if (p < 2) throw OutOfRange("modulus must be at least 2");
    g %= p;
    std::uint64_t value = g;
    std::uint64_t multiplications = 0;
    std::optional<std::uint64_t> found;
    for (std::uint64_t x = 1; x <= p - 1; ++x) {
        if (x > 1) {
            value = mulmod(value, g, p);
            ++multiplications;
        }
        if (value == target % p) {
            found = x;
            break;
        }
    }
    if (counter) counter->add_modular_multiplications(multiplications);
    return found;
}

}  // namespace cryptolab

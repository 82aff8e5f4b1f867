#include "cryptolab/random.hpp"

#include <limits>

#include "cryptolab/error.hpp"

namespace cryptolab {

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw OutOfRange("empty range for uniform draw");
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) return next();
    const std::uint64_t range = span + 1;
    // largest multiple of range that fits, to avoid modulo bias
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return lo + x % range;
}

}  // namespace cryptolab

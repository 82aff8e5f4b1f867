#pragma once

#include <cstdint>
#include <string>

namespace cryptolab {

/// Machine-independent tally of elementary steps.
struct WorkCount {
    std::uint64_t substitutions = 0;            // one symbol replaced by a letter cipher
    std::uint64_t modular_multiplications = 0;  // one (x * y) mod m
    std::uint64_t multiplications = 0;          // one plain integer product
    std::uint64_t trial_divisions = 0;          // one n % d test
    std::uint64_t key_trials = 0;               // one candidate key tried by an exhaustive search

    std::uint64_t total() const noexcept {
        return substitutions + modular_multiplications + multiplications + trial_divisions + key_trials;
    }

    bool operator==(const WorkCount&) const = default;
};

std::string to_string(const WorkCount& count);

/// Operations accept an optional WorkCounter* and add their steps to it.
class WorkCounter {
public:
    void add_substitutions(std::uint64_t n) noexcept { count_.substitutions += n; }
    void add_modular_multiplications(std::uint64_t n) noexcept { count_.modular_multiplications += n; }
    void add_multiplications(std::uint64_t n) noexcept { count_.multiplications += n; }
    void add_trial_divisions(std::uint64_t n) noexcept { count_.trial_divisions += n; }
    void add_key_trials(std::uint64_t n) noexcept { count_.key_trials += n; }

    const WorkCount& count() const noexcept { return count_; }
    void reset() noexcept { count_ = {}; }

private:
    WorkCount count_;
};

/// Runs op(WorkCounter&) against a fresh counter and returns what it counted.
template <class Op>
WorkCount count_work(Op&& op) {
    WorkCounter counter;
    op(counter);
    return counter.count();
}

}  // namespace cryptolab

#include "cryptolab/work_counter.hpp"

#include <sstream>

namespace cryptolab {

std::string to_string(const WorkCount& count) {
    std::ostringstream out;
    out << "substitutions=" << count.substitutions
        << " modular_multiplications=" << count.modular_multiplications
        << " multiplications=" << count.multiplications
        << " trial_divisions=" << count.trial_divisions
        << " key_trials=" << count.key_trials;
    return out.str();
}

}  // namespace cryptolab

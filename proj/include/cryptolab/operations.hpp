#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cryptolab/wire.hpp"

namespace cryptolab {

/// One suite capability callable by name with JSON arguments. Scenario
/// playgrounds expose a whitelisted subset of these.
struct Operation {
    std::string name;
    std::string summary;
    std::function<Json(const Json& args)> run;
};

/// Every operation a playground may offer, in a stable order.
const std::vector<Operation>& suite_operations();
const Operation* find_operation(std::string_view name);

/// Throws InvalidKey for an unknown name or a missing/ill-typed argument.
Json run_operation(std::string_view name, const Json& args);

}  // namespace cryptolab

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace plift {

/// Small example models shipped with the tool (also used by the test
/// suites). Returns the model text in the .pmc format.
std::optional<std::string> builtin_model(std::string const& name);

std::vector<std::string> builtin_model_names();

}  // namespace plift

#pragma once

#include <string>
#include <vector>

namespace hyperdomain {

/// Command dispatch for the hyperdomain tool; args exclude the program
/// name. Returns the process exit code: 0 ok, 1 check failures, 2 usage or
/// input errors.
int run_cli(const std::vector<std::string>& args);

} // namespace hyperdomain

#pragma once

#include <string>
#include <vector>

namespace llab {

// Runs one CLI command. Exit codes: 0 success, 1 parse/usage error,
// 2 contract or oracle fault (witness embedded in the report), 3 resource
// guard tripped.
int cli_run(const std::vector<std::string>& args);

}  // namespace llab

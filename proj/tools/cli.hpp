#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace auction {

// Batch front-end. Returns the process exit code: 0 on success (including
// certified non-existence and false verdicts), 1 on invalid input, 2 when
// a search gave up before reaching a conclusion.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace auction

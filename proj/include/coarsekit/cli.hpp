#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coarsekit {

// exit codes: 0 success / EQUIVALENT, 1 NOT-EQUIVALENT / REJECT,
// 2 INDETERMINATE, 64 usage error, 65 data / IO error
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarsekit

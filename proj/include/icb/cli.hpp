#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace icb::cli {

struct RunReport {
  int exit_code = 0;
  // Echo of the parsed inputs plus the outcome record, as written to
  // <out>/<command>.json.
  nlohmann::ordered_json record;
  // Paths of every emitted file.
  std::vector<std::string> artifacts;
};

// Front end for the region / bargain / simulate / sweep / compare commands.
// Exit codes: 0 success, 2 input validation error, 3 refusal when the SPE is
// requested on a non-regular problem.
RunReport run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icb::cli

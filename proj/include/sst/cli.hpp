#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sst {

/// Command-line surface: strata, cone, region, check, propagate, render.
/// Returns 0 on success, 1 on validation failure, 2 on usage errors.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sst

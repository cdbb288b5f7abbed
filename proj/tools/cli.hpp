#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vbank {

/// Exit codes: 0 success, 1 usage or input error, 2 computation error.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Same, with argv[0] supplied internally.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vbank

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace goodsemi {

// Runs one CLI command (argv without the program name). Exit codes: 0 on
// success, 1 on a domain error or failed check (error JSON on `err`), 2 on a
// usage error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace goodsemi

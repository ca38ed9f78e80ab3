#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tc::cli {

// args excludes the program name. Exit codes: 0 pass, 1 identity or validation failure, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// TROPCALC_THREADS when set and positive, else the hardware concurrency.
unsigned thread_count();

}  // namespace tc::cli

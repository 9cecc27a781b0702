#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rectsurf::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kMalformed = 2 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rectsurf::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcells::cli {

enum ExitCode { Ok = 0, VerifyFail = 1, Infeasible = 2, InputError = 3, Inconclusive = 4 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace qcells::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qhd2d::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kBlowUp = 2,
  kVerifyFailed = 3,
};

/// Entry point of the qhd2d tool; args excludes the program name.
/// Messages go to `err`, the verify report to `out`, data to files.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhd2d::cli

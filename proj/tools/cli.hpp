#pragma once

namespace rhb::cli {

enum ExitCode : int {
  kOk = 0,
  kBadFlags = 2,
  kFileError = 3,
  kOracleFailure = 4,
  kViolations = 5,
};

// Entry point for `rhb run|scaling|verify ...`.
int main(int argc, const char* const* argv);

}  // namespace rhb::cli

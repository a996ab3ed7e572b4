#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linefollow::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kNoPath = 2,
  kConfigError = 3,
  kIoError = 4,
};

/// Entry point behind the `linefollow` executable. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linefollow::cli

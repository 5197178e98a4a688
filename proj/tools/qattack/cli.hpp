#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qattack {

enum ExitCode { kOk = 0, kTestFailure = 1, kUsage = 2, kResourceGuard = 3 };

/// Entry point shared by main() and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelftestOptions {
  bool inject_fault = false;
  bool json = false;
};

int run_selftest(const SelftestOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace qattack

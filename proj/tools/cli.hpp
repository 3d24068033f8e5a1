#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace homspec::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfigError = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0 when every verdict passes, 1 on a failed
/// verdict, 2 on a configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homspec::cli

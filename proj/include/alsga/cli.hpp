#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alsga {

/// Environment variable that overrides the configured output directory.
/// An explicit --out flag still wins.
inline constexpr const char* kOutDirEnv = "ALSGA_OUT_DIR";

/// Entry point behind the `alsga` executable. args[0] is the program name.
/// Returns 0 on success, 1 on configuration or runtime errors, 2 on usage
/// errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alsga

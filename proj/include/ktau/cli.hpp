#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ktau {

// Environment variable that sets the output directory when --out is absent.
inline constexpr const char* kOutputDirEnv = "KTAU_OUTPUT_DIR";

// Entry point for the `ktau` tool. `args` excludes the program name.
// Returns 0 on success, 1 on usage or validation errors, 2 on runtime,
// numeric or I/O errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ktau

#pragma once

// The rmtheta command line.  Exit codes: 0 success or positive, 1 negative,
// empty or failed check, 2 input error.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace rmtheta::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2 };

/// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// The bundled example checks, reading the files under data_dir/example.
int selftest_example(const std::filesystem::path &data_dir, std::ostream &out, std::ostream &err);

std::filesystem::path default_data_dir();

} // namespace rmtheta::cli

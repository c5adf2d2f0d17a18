#pragma once

#include <ostream>

namespace elicit::cli {

enum ExitCode : int {
	ok = 0,
	internal_error = 1,
	input_error = 2,
	numerical_error = 3,
	counterexample_found = 4,
};

/// Runs the `elicit` command line. JSON (or the --pretty table) goes to out,
/// diagnostics to err. Returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace elicit::cli

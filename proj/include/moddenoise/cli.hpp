#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "moddenoise/bounds.hpp"
#include "moddenoise/errors.hpp"

namespace moddenoise {

/// Fixed exit-code taxonomy of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitConditionUnsatisfied = 1,
  kExitValidation = 2,
  kExitDegeneracy = 3,
  kExitNumerical = 4,
  kExitTrialFailure = 5,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Reads a BoundQuery from JSON. Keys are the field names of BoundQuery plus
/// "family" and "order_constant". For family path, complete or star with n
/// given, absent spectral fields (delta, lambda_min, lambda_1, L_size,
/// lambda_n_minus_k, lambda_n_minus_k_plus_1) are filled from the closed-form
/// spectrum. Unknown keys and wrongly typed values are validation errors.
BoundQuery parse_bound_query(std::string_view json_text);

/// Runs the tool on `args` (without the program name). Output that would go
/// to the terminal goes to `out` and `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace moddenoise

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "padic_beta/srs.hpp"

namespace padic_beta::cli {

/// Cap defaults, overridden by PADIC_BETA_DEFAULT_CAPS="orbit,witness,steps".
/// Throws std::invalid_argument on a malformed variable.
Caps default_caps();

/// Runs one invocation. args excludes the program name. The JSON report goes
/// to out, diagnostics to err. Exit codes: 0 decided, 1 input error,
/// 2 undecided (cap or budget exhausted).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Re-runs the job described by an "inputs" block (or a whole report that
/// contains one), given as JSON text.
int replay(const std::string& json_text, std::ostream& out, std::ostream& err);

}  // namespace padic_beta::cli

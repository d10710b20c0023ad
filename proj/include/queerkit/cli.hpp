#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "queerkit/report.hpp"

namespace queerkit {

enum ExitCode { exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_inconclusive = 3 };

// Any fail wins over inconclusive.
int exit_code_for(const std::vector<VerificationReport>& reports);

// One JSON object per report, fields in the documented order; millis is
// emitted as 0 unless `timing`.
std::string report_json(const VerificationReport& r, bool timing);

// Entry point behind the queerkit tool; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace queerkit

#pragma once

#include "halfline/app/config.hpp"
#include "halfline/app/output.hpp"
#include "halfline/quadrature.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace halfline::app {

enum ExitCode : int { kOk = 0, kAcceptanceFailure = 1, kUsageError = 2, kNumericError = 3 };

const std::vector<std::string>& command_names();

/// Runs one subcommand, writing CSV to cfg "output" or out. Exceptions are
/// mapped to exit codes with a message on err.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

quad::QuadratureSpec spec_from(const RunConfig& cfg);

/// A number >= 0 or "tsirelson". Throws UsageError otherwise.
double parse_mixing(const std::string& text);

struct CheckOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ReproduceReport {
    std::vector<CheckOutcome> checks;
    std::vector<std::string> files;
    bool all_pass() const;
};

/// Writes the five CSVs and their SVGs into cfg "output-dir".
ReproduceReport reproduce_paper(const RunConfig& cfg);

/// The rows of appendix-check for cfg "what"; sets all_pass.
CsvTable appendix_table(const RunConfig& cfg, bool& all_pass);

} // namespace halfline::app

#pragma once

#include "config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace absf::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kInfeasible = 2,
    kInsufficientSamples = 3,
    kValidationFailed = 4,
};

/// One analytic-versus-simulation comparison of cmd_validate.
struct ValidationRow {
    std::string quantity;
    double analytic = 0.0;
    double simulated = 0.0;
    double deviation = 0.0; // analytic - simulated
    std::string tolerance;
    bool pass = false;
};

/// analytic_scale multiplies every analytic value; 1 except in the harness self-test.
std::vector<ValidationRow> validation_rows(const sim::SimConfig& config, double analytic_scale = 1.0);

/// Entry point of the absf tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace absf::cli

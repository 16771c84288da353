#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sel::checks {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // measured value vs bound, human-readable
};

struct Options {
    bool quick = false;        // skip the Monte Carlo checks
    bool inject_fault = false; // append one deliberately failing check
    std::uint64_t seed = 12345;
    unsigned threads = 0; // 0 = hardware default
};

// Runs the oracle suite: quadrature checks of the closed forms, the ODE
// cross-check of the damped amplitude, the geometric-series check of the
// correlation transform, design round-trips, and (unless quick) Monte
// Carlo distribution/rate/Fano checks. Statistical checks are calibrated
// to pass at the default seed; the per-check details report the margins.
std::vector<CheckResult> run_checks(const Options& options = {});

bool all_passed(const std::vector<CheckResult>& results);

} // namespace sel::checks

#pragma once

#include <string>
#include <vector>

namespace sel::io {

// Round-trip-safe machine formatting (17 significant digits).
std::string fmt17(double value);

// Human-table formatting (6 significant digits).
std::string fmt6(double value);

// Frequency-grid syntax "start:stop:COUNTlog" | "start:stop:COUNTlin",
// e.g. "0.01:20:200log": COUNT >= 2 points from start to stop inclusive,
// log- or linearly spaced. Log spacing requires start > 0; both require
// start < stop. Throws ParameterError on malformed specs.
std::vector<double> parse_grid(const std::string& spec);

// Minimal JSON string escaping (quotes, backslash, control characters).
std::string json_escape(const std::string& text);

} // namespace sel::io

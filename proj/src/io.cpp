#include "sel/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "sel/core.hpp"

namespace sel::io {

namespace {

std::string format(const char* spec, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), spec, value);
    return buffer;
}

double parse_double(const std::string& text, const char* what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end != begin + text.size() || text.empty() || !std::isfinite(value)) {
        throw ParameterError(std::string("grid: ") + what
                             + " is not a finite number: '" + text + "'");
    }
    return value;
}

} // namespace

std::string fmt17(double value) { return format("%.17g", value); }

std::string fmt6(double value) { return format("%.6g", value); }

std::vector<double> parse_grid(const std::string& spec) {
    const std::size_t first = spec.find(':');
    const std::size_t second =
        first == std::string::npos ? std::string::npos
                                   : spec.find(':', first + 1);
    if (second == std::string::npos
        || spec.find(':', second + 1) != std::string::npos) {
        throw ParameterError(
            "grid: expected start:stop:COUNTlog or start:stop:COUNTlin, got '"
            + spec + "'");
    }
    const double start = parse_double(spec.substr(0, first), "start");
    const double stop =
        parse_double(spec.substr(first + 1, second - first - 1), "stop");

    std::string tail = spec.substr(second + 1);
    bool logarithmic = false;
    if (tail.size() > 3 && tail.compare(tail.size() - 3, 3, "log") == 0) {
        logarithmic = true;
    } else if (tail.size() > 3 && tail.compare(tail.size() - 3, 3, "lin") == 0) {
        logarithmic = false;
    } else {
        throw ParameterError("grid: count must end in 'log' or 'lin', got '"
                             + tail + "'");
    }
    const std::string count_text = tail.substr(0, tail.size() - 3);
    for (char c : count_text) {
        if (c < '0' || c > '9') {
            throw ParameterError("grid: count is not a positive integer: '"
                                 + count_text + "'");
        }
    }
    const long count = std::strtol(count_text.c_str(), nullptr, 10);
    if (count < 2 || count > 1000000) {
        throw ParameterError("grid: count must lie in [2, 1000000]");
    }
    if (!(start < stop)) {
        throw ParameterError("grid: start must be < stop");
    }
    if (logarithmic && !(start > 0.0)) {
        throw ParameterError("grid: log spacing requires start > 0");
    }

    std::vector<double> grid(static_cast<std::size_t>(count));
    const double n1 = static_cast<double>(count - 1);
    if (logarithmic) {
        const double ratio = stop / start;
        for (long i = 0; i < count; ++i) {
            grid[static_cast<std::size_t>(i)] =
                start * std::pow(ratio, static_cast<double>(i) / n1);
        }
    } else {
        for (long i = 0; i < count; ++i) {
            grid[static_cast<std::size_t>(i)] =
                start + (stop - start) * static_cast<double>(i) / n1;
        }
    }
    grid.front() = start;
    grid.back() = stop;
    return grid;
}

std::string json_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 8);
    for (char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buffer[8];
                std::snprintf(buffer, sizeof(buffer), "\\u%04x",
                              static_cast<unsigned>(c));
                out += buffer;
            } else {
                out += c;
            }
        }
    }
    return out;
}

} // namespace sel::io

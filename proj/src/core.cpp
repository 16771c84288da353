#include "sel/core.hpp"

#include <cmath>

namespace sel {

void validate(const RateParams& params) {
    if (!std::isfinite(params.gamma) || !(params.gamma > 0.0)) {
        throw ParameterError("RateParams: gamma must be finite and > 0");
    }
    if (!std::isfinite(params.rabi) || !(params.rabi > 0.0)) {
        throw ParameterError("RateParams: rabi must be finite and > 0");
    }
}

DampingRegime classify(double gamma, double rabi) {
    const double diff = gamma * gamma - rabi * rabi;
    if (std::abs(diff) <= critical_band * rabi * rabi) {
        return DampingRegime::Critical;
    }
    return diff > 0.0 ? DampingRegime::Overdamped : DampingRegime::Underdamped;
}

DerivedParams derive(const RateParams& params) {
    validate(params);
    DerivedParams out;
    const double g2 = params.gamma * params.gamma;
    const double w2 = params.rabi * params.rabi;
    out.a = 2.0 * g2 / w2;
    out.regime = classify(params.gamma, params.rabi);
    const double diff = g2 - w2;
    if (diff >= 0.0) {
        out.alpha = {std::sqrt(diff), 0.0};
    } else {
        out.alpha = {0.0, std::sqrt(-diff)};
    }
    return out;
}

const char* to_string(DampingRegime regime) {
    switch (regime) {
    case DampingRegime::Overdamped: return "overdamped";
    case DampingRegime::Critical: return "critical";
    case DampingRegime::Underdamped: return "underdamped";
    }
    return "unknown";
}

} // namespace sel

#include "sel/analytics.hpp"

#include <cmath>

namespace sel::analytics {

namespace {

// Threshold on alpha*t above which sinh/cosh-based forms would overflow or
// lose all relative accuracy; the equivalent exponential-split form is exact
// there because the three decay rates are well separated.
constexpr double split_threshold = 40.0;

struct Regimes {
    DampingRegime regime;
    double gamma;
    double rabi;
    double split; // alpha (overdamped) or beta (underdamped), 0 if critical
};

Regimes analyze(const RateParams& params) {
    validate(params);
    const DerivedParams d = derive(params);
    Regimes r{d.regime, params.gamma, params.rabi, 0.0};
    if (d.regime == DampingRegime::Overdamped) {
        r.split = d.alpha.real();
    } else if (d.regime == DampingRegime::Underdamped) {
        r.split = d.alpha.imag();
    }
    return r;
}

} // namespace

double waiting_time_density(const RateParams& params, double t) {
    if (!std::isfinite(t)) {
        throw ParameterError("analytics: time must be finite");
    }
    if (t < 0.0) {
        throw ParameterError("analytics: time must be non-negative");
    }
    const Regimes r = analyze(params);
    const double g = r.gamma;
    const double w = r.rabi;
    switch (r.regime) {
    case DampingRegime::Overdamped: {
        const double alpha = r.split;
        if (alpha * t > split_threshold) {
            // (g w^2 / 2 alpha^2)(e^{(alpha-g)t} + e^{-(alpha+g)t} - 2e^{-g t})
            const double pre = 0.5 * g * w * w / (alpha * alpha);
            return pre * (std::exp((alpha - g) * t) + std::exp(-(alpha + g) * t)
                          - 2.0 * std::exp(-g * t));
        }
        const double s = std::sinh(0.5 * alpha * t);
        const double ratio = w / alpha;
        return 2.0 * g * ratio * ratio * std::exp(-g * t) * s * s;
    }
    case DampingRegime::Underdamped: {
        const double beta = r.split;
        const double s = std::sin(0.5 * beta * t);
        const double ratio = w / beta;
        return 2.0 * g * ratio * ratio * std::exp(-g * t) * s * s;
    }
    case DampingRegime::Critical:
    default:
        return 0.5 * g * w * w * t * t * std::exp(-g * t);
    }
}

double waiting_time_cdf(const RateParams& params, double t) {
    if (!std::isfinite(t)) {
        throw ParameterError("analytics: time must be finite");
    }
    if (t < 0.0) {
        throw ParameterError("analytics: time must be non-negative");
    }
    const Regimes r = analyze(params);
    const double g = r.gamma;
    const double w = r.rabi;
    switch (r.regime) {
    case DampingRegime::Overdamped: {
        const double alpha = r.split;
        if (alpha * t > split_threshold) {
            // Antiderivative of the exponential-split density, fixed to
            // vanish at t = 0. All three terms stay representable because
            // alpha < g in the overdamped regime.
            const double pre = 0.5 * g * w * w / (alpha * alpha);
            const double term1 = (1.0 - std::exp((alpha - g) * t)) / (g - alpha);
            const double term2 = (1.0 - std::exp(-(alpha + g) * t)) / (g + alpha);
            const double term3 = 2.0 * (1.0 - std::exp(-g * t)) / g;
            return pre * (term1 + term2 - term3);
        }
        const double sh = std::sinh(0.5 * alpha * t);
        const double bracket = 1.0 + g * std::sinh(alpha * t) / alpha
                               + 2.0 * g * g * sh * sh / (alpha * alpha);
        return 1.0 - std::exp(-g * t) * bracket;
    }
    case DampingRegime::Underdamped: {
        const double beta = r.split;
        const double sn = std::sin(0.5 * beta * t);
        const double bracket = 1.0 + g * std::sin(beta * t) / beta
                               + 2.0 * g * g * sn * sn / (beta * beta);
        return 1.0 - std::exp(-g * t) * bracket;
    }
    case DampingRegime::Critical:
    default: {
        const double ratio = w * w / (g * g);
        const double gt = g * t;
        return ratio * (1.0 - std::exp(-gt) * (1.0 + gt + 0.5 * gt * gt));
    }
    }
}

std::complex<double> waiting_time_laplace(const RateParams& params,
                                          std::complex<double> p) {
    validate(params);
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
        throw ParameterError("analytics: transform variable must be finite");
    }
    const double g = params.gamma;
    const double w = params.rabi;
    const double num = g * w * w;
    const std::complex<double> den =
        ((p + 3.0 * g) * p + (2.0 * g * g + w * w)) * p + num;
    // Scale for the pole test: the denominator is cubic with coefficients of
    // magnitude up to max(|p|, g, w)^3.
    const double scale = std::pow(std::max({std::abs(p), g, w}), 3);
    if (std::abs(den) <= 1e-13 * scale) {
        throw NumericError("analytics: transform evaluated at a pole");
    }
    return num / den;
}

double mean_waiting_time(const RateParams& params) {
    const DerivedParams d = derive(params);
    return (1.0 + d.a) / params.gamma;
}

double mean_jump_rate(const RateParams& params) {
    const DerivedParams d = derive(params);
    return params.gamma / (1.0 + d.a);
}

std::complex<double> event_correlation_laplace(const RateParams& params,
                                               std::complex<double> p) {
    validate(params);
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
        throw ParameterError("analytics: transform variable must be finite");
    }
    const double g = params.gamma;
    const double w = params.rabi;
    // G~ = w~/(1 - w~) = g w^2 / (p (p^2 + 3g p + 2g^2 + w^2)): the constant
    // term of the cubic cancels exactly, so factor p out analytically instead
    // of forming 1 - w~ numerically.
    const std::complex<double> quad = (p + 3.0 * g) * p + (2.0 * g * g + w * w);
    const std::complex<double> den = p * quad;
    const double scale = std::pow(std::max({std::abs(p), g, w}), 3);
    if (std::abs(den) <= 1e-13 * scale) {
        throw NumericError("analytics: correlation transform evaluated at a pole");
    }
    return g * w * w / den;
}

double jump_spectral_density(const RateParams& params, double omega) {
    if (!std::isfinite(omega)) {
        throw ParameterError("analytics: frequency must be finite");
    }
    const DerivedParams d = derive(params);
    const double a = d.a;
    const double x = omega / params.gamma;
    const double x2 = x * x;
    const double den = (1.0 + a) * (1.0 + a)
                       + a * (1.25 * a - 1.0) * x2
                       + 0.25 * a * a * x2 * x2;
    return 1.0 - 3.0 * a / den;
}

double zero_frequency_fano(const RateParams& params) {
    const DerivedParams d = derive(params);
    const double a = d.a;
    return 1.0 - 3.0 * a / ((1.0 + a) * (1.0 + a));
}

double pump_feedback_gain(const RateParams& params) {
    const DerivedParams d = derive(params);
    return d.a / (1.0 + d.a);
}

double detected_noise_level(const RateParams& params) {
    const DerivedParams d = derive(params);
    const double a = d.a;
    return 2.0 * a * a - a + 1.0;
}

namespace {

// Detected level as a function of a alone, routed through the public
// evaluators so the optimum reflects the implemented curve.
double level_of(double a) {
    // gamma = 1, rabi chosen so that 2 gamma^2 / rabi^2 = a.
    RateParams p{1.0, std::sqrt(2.0 / a)};
    return detected_noise_level(p);
}

} // namespace

OperatingPoint optimal_operating_point() {
    // The level 2a^2 - a + 1 is strictly convex with derivative 4a - 1, so
    // bisect the derivative's sign change. Bisection on the exact slope
    // converges to the last representable bracket, unlike a minimizer of the
    // level itself, whose flat quadratic bottom limits accuracy to ~sqrt(eps).
    auto slope = [](double a) { return 4.0 * a - 1.0; };
    double lo = 1e-3;
    double hi = 1.0;
    double flo = slope(lo);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break; // interval no longer splittable in double precision
        }
        const double fm = slope(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    OperatingPoint out;
    out.a_opt = 0.5 * (lo + hi);
    out.level = level_of(out.a_opt);
    return out;
}

SpectralCurve analytic_jump_curve(const RateParams& params,
                                  std::span<const double> omega_grid) {
    validate(params);
    SpectralCurve curve;
    curve.kind = CurveKind::AnalyticJump;
    curve.omega_grid.assign(omega_grid.begin(), omega_grid.end());
    curve.values.reserve(curve.omega_grid.size());
    for (double omega : curve.omega_grid) {
        curve.values.push_back(jump_spectral_density(params, omega));
    }
    return curve;
}

ClosedLoopNoise closed_loop_noise(const RateParams& params) {
    ClosedLoopNoise out;
    out.feedback_gain = pump_feedback_gain(params);
    out.detected_level = detected_noise_level(params);
    return out;
}

} // namespace sel::analytics

#include "sel/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace sel::dynamics {

namespace {

constexpr double split_threshold = 40.0; // on alpha*t, as in analytics

void check_rates(double gamma, double rabi) {
    if (!std::isfinite(gamma) || gamma < 0.0) {
        throw ParameterError("dynamics: gamma must be finite and >= 0");
    }
    if (!std::isfinite(rabi) || !(rabi > 0.0)) {
        throw ParameterError("dynamics: rabi must be finite and > 0");
    }
}

void check_time(double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw ParameterError("dynamics: time must be finite and >= 0");
    }
}

// State layout: (Re c1, Im c1, Re c2, Im c2).
using State = std::array<double, 4>;

State derivative(double gamma, double half_rabi, const State& y) {
    // c1' = i*half_rabi*c2 - gamma*c1 ; c2' = i*half_rabi*c1
    return State{
        -half_rabi * y[3] - gamma * y[0],
        half_rabi * y[2] - gamma * y[1],
        -half_rabi * y[1],
        half_rabi * y[0],
    };
}

} // namespace

double rabi_probability(double rabi, double t) {
    check_rates(0.0, rabi);
    check_time(t);
    const double s = std::sin(0.5 * rabi * t);
    return s * s;
}

std::complex<double> damped_amplitude(double gamma, double rabi, double t) {
    check_rates(gamma, rabi);
    check_time(t);
    const DampingRegime regime = classify(gamma, rabi);
    // The closed form is i * rabi * e^{-gamma t/2} * f(t) with f real:
    //   overdamped  sinh(alpha t/2)/alpha
    //   underdamped sin(beta t/2)/beta     (beta^2 = rabi^2 - gamma^2)
    //   critical    t/2
    double magnitude = 0.0;
    switch (regime) {
    case DampingRegime::Overdamped: {
        const double alpha = std::sqrt(gamma * gamma - rabi * rabi);
        if (alpha * t > split_threshold) {
            magnitude = 0.5 * rabi / alpha
                        * (std::exp(0.5 * (alpha - gamma) * t)
                           - std::exp(-0.5 * (alpha + gamma) * t));
        } else {
            magnitude = rabi * std::exp(-0.5 * gamma * t)
                        * std::sinh(0.5 * alpha * t) / alpha;
        }
        break;
    }
    case DampingRegime::Underdamped: {
        const double beta = std::sqrt(rabi * rabi - gamma * gamma);
        magnitude = rabi * std::exp(-0.5 * gamma * t)
                    * std::sin(0.5 * beta * t) / beta;
        break;
    }
    case DampingRegime::Critical:
    default:
        magnitude = 0.5 * rabi * t * std::exp(-0.5 * gamma * t);
        break;
    }
    return {0.0, magnitude};
}

std::complex<double> damped_amplitude(const RateParams& params, double t) {
    validate(params);
    return damped_amplitude(params.gamma, params.rabi, t);
}

std::vector<AmplitudeState> integrate_amplitudes(double gamma, double rabi,
                                                 std::span<const double> sample_times,
                                                 double tol) {
    check_rates(gamma, rabi);
    if (!std::isfinite(tol) || tol < 1e-12 || tol > 1e-4) {
        throw ParameterError("dynamics: tol must lie in [1e-12, 1e-4]");
    }
    if (sample_times.empty()) {
        throw ParameterError("dynamics: sample_times must be non-empty");
    }
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (!std::isfinite(sample_times[i]) || sample_times[i] < 0.0) {
            throw ParameterError("dynamics: sample times must be finite and >= 0");
        }
        if (i > 0 && !(sample_times[i] > sample_times[i - 1])) {
            throw ParameterError("dynamics: sample times must be strictly increasing");
        }
    }

    // Dormand-Prince 4(5) with FSAL. Fifth-order weights b5 propagate the
    // solution; the embedded fourth-order weights b4 give the error estimate.
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                            a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double b51 = 35.0 / 384.0, b53 = 500.0 / 1113.0,
                            b54 = 125.0 / 192.0, b55 = -2187.0 / 6784.0,
                            b56 = 11.0 / 84.0;
    static constexpr double b41 = 5179.0 / 57600.0, b43 = 7571.0 / 16695.0,
                            b44 = 393.0 / 640.0, b45 = -92097.0 / 339200.0,
                            b46 = 187.0 / 2100.0, b47 = 1.0 / 40.0;

    const double half_rabi = 0.5 * rabi;
    auto f = [&](const State& y) { return derivative(gamma, half_rabi, y); };

    std::vector<AmplitudeState> out;
    out.reserve(sample_times.size());

    double t = 0.0;
    State y{0.0, 0.0, 1.0, 0.0}; // C1 = 0, C2 = 1
    State k1 = f(y);

    const double rate_scale = std::max(gamma, rabi);
    double h = std::min(0.05 / rate_scale, sample_times.back() > 0.0
                                               ? sample_times.back()
                                               : 0.05 / rate_scale);

    auto record = [&](double ts) {
        out.push_back(AmplitudeState{{y[0], y[1]}, {y[2], y[3]}, ts});
    };

    for (double target : sample_times) {
        if (target == t) {
            record(target);
            continue;
        }
        while (t < target) {
            bool clipped = false;
            double step = h;
            if (t + step >= target) {
                step = target - t;
                clipped = true;
            }
            if (step < 32.0 * std::numeric_limits<double>::epsilon()
                           * std::max(1.0, std::abs(t))) {
                // The remaining gap is below representable resolution.
                t = target;
                break;
            }

            State k2, k3, k4, k5, k6, k7, y5, tmp;
            for (int i = 0; i < 4; ++i) tmp[i] = y[i] + step * a21 * k1[i];
            k2 = f(tmp);
            for (int i = 0; i < 4; ++i)
                tmp[i] = y[i] + step * (a31 * k1[i] + a32 * k2[i]);
            k3 = f(tmp);
            for (int i = 0; i < 4; ++i)
                tmp[i] = y[i] + step * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            k4 = f(tmp);
            for (int i = 0; i < 4; ++i)
                tmp[i] = y[i] + step * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i]
                                        + a54 * k4[i]);
            k5 = f(tmp);
            for (int i = 0; i < 4; ++i)
                tmp[i] = y[i] + step * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i]
                                        + a64 * k4[i] + a65 * k5[i]);
            k6 = f(tmp);
            for (int i = 0; i < 4; ++i)
                y5[i] = y[i] + step * (b51 * k1[i] + b53 * k3[i] + b54 * k4[i]
                                       + b55 * k5[i] + b56 * k6[i]);
            k7 = f(y5);

            double err = 0.0;
            for (int i = 0; i < 4; ++i) {
                const double y4 = y[i] + step * (b41 * k1[i] + b43 * k3[i]
                                                 + b44 * k4[i] + b45 * k5[i]
                                                 + b46 * k6[i] + b47 * k7[i]);
                const double scale =
                    tol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                const double e = (y5[i] - y4) / scale;
                err += e * e;
            }
            err = std::sqrt(err / 4.0);

            if (err <= 1.0) {
                t = clipped ? target : t + step;
                y = y5;
                k1 = k7; // FSAL
            }
            const double factor =
                err > 0.0 ? 0.9 * std::pow(err, -0.2)
                          : 5.0; // error vanished: grow at the cap
            h = step * std::clamp(factor, 0.2, 5.0);
            if (h < 1e3 * std::numeric_limits<double>::min()) {
                throw NumericError("dynamics: step size underflow (stiffness)");
            }
        }
        record(target);
    }
    return out;
}

std::vector<AmplitudeState> integrate_amplitudes(const RateParams& params,
                                                 double t_end, double tol) {
    validate(params);
    if (!std::isfinite(t_end) || !(t_end > 0.0)) {
        throw ParameterError("dynamics: t_end must be finite and > 0");
    }
    constexpr int n = 257;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = t_end * static_cast<double>(i) / (n - 1);
    }
    return integrate_amplitudes(params.gamma, params.rabi, grid, tol);
}

} // namespace sel::dynamics

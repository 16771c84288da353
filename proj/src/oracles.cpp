#include "sel/oracles.hpp"

#include <cmath>
#include <memory>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "sel/analytics.hpp"

namespace sel::oracles {

namespace {

double trampoline(double x, void* opaque) {
    const auto* f = static_cast<const std::function<double(double)>*>(opaque);
    return (*f)(x);
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const {
        gsl_integration_workspace_free(w);
    }
};

} // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
        throw ParameterError("oracles: integration bounds must be finite with hi > lo");
    }
    if (!(abs_tol > 0.0)) {
        throw ParameterError("oracles: tolerance must be > 0");
    }
    // The default GSL handler aborts the process; disable it for this call
    // and restore afterwards so failures surface as exceptions.
    gsl_error_handler_t* previous = gsl_set_error_handler_off();
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> workspace(
        gsl_integration_workspace_alloc(4096));

    gsl_function target;
    target.function = &trampoline;
    target.params = const_cast<std::function<double(double)>*>(&f);

    double result = 0.0;
    double abserr = 0.0;
    const int status = gsl_integration_qag(&target, lo, hi, abs_tol, 0.0, 4096,
                                           GSL_INTEG_GAUSS21, workspace.get(),
                                           &result, &abserr);
    gsl_set_error_handler(previous);

    // GSL_EROUND with an error estimate still inside tolerance is benign
    // (roundoff-limited refinement of an already converged result).
    if (status != 0 && !(status == GSL_EROUND && abserr <= 10.0 * abs_tol)) {
        throw NumericError("oracles: quadrature failed to converge");
    }
    return result;
}

double waiting_time_upper_cutoff(const RateParams& params) {
    const DerivedParams d = derive(params);
    return (40.0 + 20.0 * d.a) / params.gamma;
}

std::complex<double> laplace_transform_numeric(const RateParams& params,
                                               std::complex<double> p,
                                               double abs_tol) {
    validate(params);
    const double cutoff = waiting_time_upper_cutoff(params);
    auto real_part = [&](double t) {
        return analytics::waiting_time_density(params, t)
               * std::exp(-p.real() * t) * std::cos(p.imag() * t);
    };
    auto imag_part = [&](double t) {
        return -analytics::waiting_time_density(params, t)
               * std::exp(-p.real() * t) * std::sin(p.imag() * t);
    };
    return {integrate(real_part, 0.0, cutoff, abs_tol),
            integrate(imag_part, 0.0, cutoff, abs_tol)};
}

std::complex<double> event_correlation_series(const RateParams& params,
                                              std::complex<double> p,
                                              int terms) {
    if (terms < 1) {
        throw ParameterError("oracles: series needs at least one term");
    }
    const std::complex<double> w = analytics::waiting_time_laplace(params, p);
    std::complex<double> power = w;
    std::complex<double> sum = w;
    for (int k = 2; k <= terms; ++k) {
        power *= w;
        sum += power;
    }
    return sum;
}

double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf) {
    const std::size_t n = sorted_samples.size();
    if (n == 0) {
        throw ParameterError("oracles: KS statistic needs samples");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && sorted_samples[i] < sorted_samples[i - 1]) {
            throw ParameterError("oracles: samples must be sorted ascending");
        }
        const double value = cdf(sorted_samples[i]);
        const double above = static_cast<double>(i + 1) / n - value;
        const double below = value - static_cast<double>(i) / n;
        worst = std::max({worst, above, below});
    }
    return worst;
}

double central_difference(const std::function<double(double)>& f, double x,
                          double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw ParameterError("oracles: step must be finite and > 0");
    }
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace sel::oracles

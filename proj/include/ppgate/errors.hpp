#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ppgate {

// exit code 1 in the CLI
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exit code 2 in the CLI
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// non-convergence that still carries the best available estimate
struct quadrature_error : numerical_error {
    std::complex<double> best_value;
    double err_estimate;
    quadrature_error(const std::string& msg, std::complex<double> value, double err)
        : numerical_error(msg), best_value(value), err_estimate(err) {}
};

}  // namespace ppgate

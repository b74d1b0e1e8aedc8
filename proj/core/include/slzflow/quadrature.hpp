#pragma once

#include <functional>

#include "slzflow/errors.hpp"

namespace slz {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod 15(7) integration of f over [a, b] to the requested
/// absolute accuracy.  Throws QuadratureFailure if the target is not met
/// within max_subdivisions interval splits.
QuadratureResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = 1e-12, int max_subdivisions = 10000);

} // namespace slz

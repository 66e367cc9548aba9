#pragma once

#include <functional>

namespace enpt {

/// Composite 30-point Gauss-Legendre rule on [a, b]. The panel count doubles
/// (starting from `initial_panels`) until two successive estimates differ by
/// less than `tolerance`. Throws QuadratureFailure past `max_panels`.
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, double tolerance = 1e-13,
                        int initial_panels = 4, int max_panels = 1 << 14);

}  // namespace enpt

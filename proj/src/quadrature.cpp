#include "enpt/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "enpt/errors.hpp"

namespace enpt {

namespace {

double composite(const std::function<double(double)>& f, double a, double b,
                 int panels) {
  using rule = boost::math::quadrature::gauss<double, 30>;
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    sum += rule::integrate(f, lo, lo + h);
  }
  return sum;
}

}  // namespace

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, double tolerance, int initial_panels,
                        int max_panels) {
  int panels = initial_panels;
  double previous = composite(f, a, b, panels);
  while (panels < max_panels) {
    panels *= 2;
    const double current = composite(f, a, b, panels);
    if (std::abs(current - previous) < tolerance) return current;
    previous = current;
  }
  throw QuadratureFailure("quadrature on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "] did not settle below " +
                          std::to_string(tolerance) + " with " +
                          std::to_string(max_panels) + " panels");
}

}  // namespace enpt

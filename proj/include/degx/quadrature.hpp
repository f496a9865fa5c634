#pragma once

#include <functional>
#include <vector>

namespace degx {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;  // estimated
  int panels = 0;
};

// Adaptive Gauss-Kronrod 15(7) on [lo,hi]. Splits the worst panel until the
// summed error estimate meets max(abs_tol, rel_tol*|value|). Optional interior
// split points seed the initial panels (put one at a peak). Throws
// NumericalError if max_panels is exhausted before the target is met.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi,
                              double rel_tol, double abs_tol,
                              const std::vector<double>& split_points = {},
                              int max_panels = 4000);

}  // namespace degx

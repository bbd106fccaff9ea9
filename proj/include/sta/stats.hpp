#pragma once

#include <span>

namespace sta {

struct Ci95 {
  double mean = 0.0;
  double halfwidth = 0.0;
  bool degenerate = false;  // single observation; halfwidth reported as 0
};

// Two-sided 95% Student-t interval with k - 1 degrees of freedom.
Ci95 ci95(std::span<const double> sample);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  bool significant = false;
  int direction = 0;  // change from a to b: +1 increase, -1 decrease, 0 tie
};

// Welch two-sample t-test, unequal variances, two-sided p via the
// Welch-Satterthwaite degrees of freedom. Both samples need >= 2 values;
// throws DegenerateSampleError when both variances are zero and the means
// coincide.
WelchResult welch_t(std::span<const double> a, std::span<const double> b,
                    double alpha = 0.05);

}  // namespace sta

#include "sta/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "sta/errors.hpp"

namespace sta {

namespace {

double mean_of(std::span<const double> sample) {
  double total = 0.0;
  for (double v : sample) total += v;
  return total / static_cast<double>(sample.size());
}

// unbiased sample variance
double variance_of(std::span<const double> sample, double mean) {
  double total = 0.0;
  for (double v : sample) total += (v - mean) * (v - mean);
  return total / static_cast<double>(sample.size() - 1);
}

}  // namespace

Ci95 ci95(std::span<const double> sample) {
  if (sample.empty()) throw DegenerateSampleError("ci95: empty sample");
  const auto k = sample.size();
  Ci95 result;
  result.mean = mean_of(sample);
  if (k == 1) {
    result.degenerate = true;
    return result;
  }
  const double sd = std::sqrt(variance_of(sample, result.mean));
  const boost::math::students_t dist(static_cast<double>(k - 1));
  result.halfwidth =
      boost::math::quantile(dist, 0.975) * sd / std::sqrt(static_cast<double>(k));
  return result;
}

WelchResult welch_t(std::span<const double> a, std::span<const double> b,
                    double alpha) {
  if (a.size() < 2 || b.size() < 2) {
    throw DegenerateSampleError("welch_t: both samples need at least 2 values");
  }
  const double ka = static_cast<double>(a.size());
  const double kb = static_cast<double>(b.size());
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const double va = variance_of(a, ma);
  const double vb = variance_of(b, mb);

  WelchResult result;
  result.direction = mb > ma ? 1 : (mb < ma ? -1 : 0);
  if (va == 0.0 && vb == 0.0) {
    if (ma == mb) {
      throw DegenerateSampleError(
          "welch_t: both variances are zero and the means coincide");
    }
    // constant samples with distinct means: the difference is exact
    result.t = ma > mb ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    result.df = std::numeric_limits<double>::quiet_NaN();
    result.p = 0.0;
    result.significant = true;
    return result;
  }

  const double sa = va / ka;
  const double sb = vb / kb;
  result.t = (ma - mb) / std::sqrt(sa + sb);
  result.df = (sa + sb) * (sa + sb) /
              (sa * sa / (ka - 1.0) + sb * sb / (kb - 1.0));
  const boost::math::students_t dist(result.df);
  result.p = 2.0 * boost::math::cdf(dist, -std::abs(result.t));
  result.significant = result.p < alpha;
  return result;
}

}  // namespace sta

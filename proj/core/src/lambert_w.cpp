#include "sybil/lambert_w.hpp"

#include <cmath>
#include <numbers>

#include "sybil/error.hpp"
#include "sybil/numeric.hpp"

namespace sybil {

namespace {

constexpr int kMaxIterations = 50;
constexpr double kStepTolerance = 1e-14;

double initial_guess(double z) {
  if (z < 0.0) {
    // Series about the branch point in p = sqrt(2 (e z + 1)).
    const double p = std::sqrt(2.0 * (std::numbers::e * z + 1.0));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }
  if (z <= 3.0) return std::log1p(z);
  const double l1 = std::log(z);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double z) {
  constexpr double kBranchPoint = -1.0 / std::numbers::e;
  if (std::isnan(z) || z < kBranchPoint) {
    throw DomainError("lambert_w0 is undefined below -1/e, got " + format_number(z));
  }
  if (z == 0.0) return 0.0;
  if (z == kBranchPoint) return -1.0;
  if (std::isinf(z)) return z;

  double w = initial_guess(z);
  for (int i = 0; i < kMaxIterations; ++i) {
    const double ew = std::exp(w);
    const double residual = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * residual / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double step = residual / denom;
    w -= step;
    if (std::abs(step) <= kStepTolerance * std::max(1.0, std::abs(w))) break;
  }
  // Rounding near the branch point can push the iterate just below -1.
  return std::max(w, -1.0);
}

}  // namespace sybil

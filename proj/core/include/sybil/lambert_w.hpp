#pragma once

namespace sybil {

/// Principal branch W0 of the Lambert W function: the w >= -1 solving
/// w * exp(w) = z, defined for z >= -1/e.
///
/// Halley iteration from ln(1 + z) on [0, 3], the asymptotic expansion
/// ln z - ln ln z above that, and the branch-point series for z < 0.
/// At most 50 iterations, stopping at a relative step below 1e-14.
/// Throws DomainError for z < -1/e or NaN.
double lambert_w0(double z);

}  // namespace sybil

#pragma once

#include <span>

namespace fraccol::detail {

/// Determinant of [theta_i^{beta_k}] by partially pivoted LU in long double
/// with per-column magnitude scaling. Powers evaluated as exp(beta*ln theta),
/// except beta == 0 which yields exactly 1. No input validation: callers must
/// ensure theta > 0; beta may contain zero (constant column). Shared between
/// the public generalized Vandermonde routine and the characteristic
/// polynomial subset enumeration.
long double gvdm_longdouble(std::span<const double> theta, std::span<const double> beta);

}  // namespace fraccol::detail

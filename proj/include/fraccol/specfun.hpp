#pragma once

namespace fraccol {

/// Gamma function for positive real arguments.
/// Lanczos approximation; relative error below 1e-13 on (0, 32].
/// Throws DomainError for x <= 0 or non-finite x.
double gamma_function(double x);

/// Coefficient of the fractional power rule: differentiating t^j of order
/// alpha gives c_j * t^(j-alpha) with c_j = Gamma(j+1)/Gamma(j+1-alpha).
/// Requires j >= 1 and alpha in (0, 1].
double caputo_power_coefficient(int j, double alpha);

}  // namespace fraccol

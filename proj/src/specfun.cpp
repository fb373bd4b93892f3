#include "fraccol/specfun.hpp"

#include <cmath>

#include "fraccol/errors.hpp"

namespace fraccol {

namespace {

// Lanczos coefficients for g = 7, 9 terms (Godfrey's tabulation).
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

}  // namespace

double gamma_function(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("gamma_function: argument must be positive and finite");
    const double z = x - 1.0;
    double series = kLanczosCoef[0];
    for (int i = 1; i < 9; ++i) series += kLanczosCoef[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * series;
}

double caputo_power_coefficient(int j, double alpha) {
    if (j < 1) throw DomainError("caputo_power_coefficient: j must be >= 1");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("caputo_power_coefficient: alpha must lie in (0, 1]");
    return gamma_function(j + 1.0) / gamma_function(j + 1.0 - alpha);
}

}  // namespace fraccol

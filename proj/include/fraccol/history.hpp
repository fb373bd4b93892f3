#pragma once

#include <vector>

#include "fraccol/collocation.hpp"
#include "fraccol/densemat.hpp"
#include "fraccol/mesh.hpp"

namespace fraccol {

/// Moment integrals of the memory kernel over one past interval:
///   I_i(A, alpha) = integral_0^1 u^i (A - u)^(-alpha) du,  A >= 1.
struct HistoryWeightTable {
    double alpha = 0.0;
    double A = 0.0;
    std::vector<double> values;  // I_0 .. I_{i_max}
};

/// Compute I_0..I_{i_max}. Two regimes:
///  - A <= 1.5: forward recurrence I_0 = [A^{1-alpha} - (A-1)^{1-alpha}]/(1-alpha),
///    I_i = [i*A*I_{i-1} - (A-1)^{1-alpha}]/(i+1-alpha). The recurrence
///    amplifies rounding roughly by a factor A per index, so it is kept to
///    small A where that growth stays below ~1e-12 for i <= 20.
///  - A > 1.5: series I_i = A^{-alpha} * sum_n (alpha)_n / (n! A^n (i+n+1)),
///    truncated when a term drops below 1e-15 of the partial sum; the ratio
///    of consecutive terms tends to 1/A < 2/3, so convergence is geometric.
/// A = 1 is allowed for alpha < 1 (integrable endpoint singularity);
/// A = 1 with alpha = 1 diverges and is rejected.
HistoryWeightTable history_weights(int i_max, double A, double alpha);

/// Validation oracle: adaptive Simpson quadrature over dyadic panels
/// refined toward u = 1, with an analytic bound on the dropped tail.
/// Intended for tests; much slower than history_weights.
double history_weights_oracle(int i, double A, double alpha, double tol = 1e-12);

/// Memory part of the fractional derivative of a piecewise-polynomial
/// solution at collocation time t_k^ell = t_{k-1} + tau_k * theta_ell:
///   (1/Gamma(1-alpha)) * sum_{j<k} tau_j^{-alpha} * sum_i i * V_{j,i} * I_{i-1}(A_{j,ell})
/// with A_{j,ell} = (t_k^ell - t_{j-1}) / tau_j. blocks[j-1] holds the m x N
/// coefficient block of interval j; ell is 0-based. Returns the zero vector
/// for k = 1 (no history) and for alpha = 1 (the memory prefactor
/// 1/Gamma(1-alpha) vanishes).
std::vector<double> caputo_history_term(const TemporalMesh& mesh,
                                        const std::vector<DenseMatrix>& blocks,
                                        const CollocationRule& rule, double alpha, int k,
                                        int ell);

}  // namespace fraccol

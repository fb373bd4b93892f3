#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fraccol/collocation.hpp"

namespace fraccol {

/// Classification tolerances for the eigenvalue certificate.
struct SpectrumOptions {
    /// lambda counts as real iff |Im| <= imag_tol * max(1, |lambda|).
    double imag_tol = 1e-8;
    /// a real lambda counts as negative iff Re < -negative_tol.
    double negative_tol = 1e-10;
};

/// Eigenvalue certificate for the collocation matrix M = D1*W*D2*W^{-1}.
struct SpectrumReport {
    int m = 0;
    double alpha = 0.0;
    PointFamily family = PointFamily::custom;
    std::vector<std::complex<double>> eigenvalues;  // sorted by (re, im)
    bool has_real_negative = false;
    bool all_real_parts_positive = false;
    int real_eigenvalue_count = 0;
    double min_real_part = 0.0;
};

/// Coefficients a_0..a_m of det(M_alpha - lambda*W) = sum_j (-lambda)^j a_j,
/// assembled by subset enumeration, plus the agreement residual against the
/// independent Faddeev-LeVerrier route.
struct CharPolyReport {
    std::vector<double> coefficients;
    bool all_positive = false;
    double cross_check_residual = 0.0;
};

struct LaxMilgramReport {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

struct StepsizeReport {
    bool ok = false;
    double norm = 0.0;  // inf-norm of (D1 W D2)^{-1} D_c W; the test is tau^alpha * norm < 1
};

/// Grid estimate of C_M = sup_{lambda >= 0} ||(M + lambda I)^{-1}||_inf.
struct ResolventEstimate {
    double C_M = 0.0;
    std::string lambda_grid;  // human-readable sampling description
    bool tail_verified = false;  // lambda*||R(lambda)|| in [0.9, 1.1] at the largest lambda
};

/// Compute the spectrum of M and classify it. The solvability certificate
/// holds when has_real_negative is false.
SpectrumReport spectrum(const CollocationRule& rule, double alpha, const SpectrumOptions& opt = {});

/// Characteristic polynomial coefficients by enumerating all 2^m column
/// subsets; each term is a product of power-rule coefficients times a
/// generalized Vandermonde determinant. Requires m <= 16. The report carries
/// the max relative disagreement against charpoly_leverrier.
CharPolyReport charpoly_subsets(const CollocationRule& rule, double alpha);

/// Independent route to the same coefficients: Faddeev-LeVerrier on
/// A = W^{-1} M_alpha (computed in long double), scaled by det W and
/// sign-aligned so that det(M_alpha - lambda W) = sum_j (-lambda)^j a_j.
std::vector<double> charpoly_leverrier(const CollocationMatrices& matrices);

/// Coercivity test: true iff the symmetric part of W^T diag(D) W diag(D2/c_1)
/// is positive-semidefinite within 1e-12 * ||.||_inf. All D entries must be
/// positive.
LaxMilgramReport lax_milgram_check(const CollocationRule& rule, double alpha,
                                   std::span<const double> D);

/// For the two-point rule (theta1, 1): returns D = (1, theta1^3) whenever
/// theta1 <= 1 - alpha/2 (then lax_milgram_check passes), nothing otherwise.
std::optional<std::vector<double>> lax_milgram_D_m2(double theta1, double alpha);

/// Sufficient step-size condition for the fractional ODE fixed point:
/// tau^alpha * ||(D1 W D2)^{-1} diag(c_values) W||_inf < 1.
StepsizeReport ode_stepsize_check(const CollocationRule& rule, double alpha, double tau,
                                  std::span<const double> c_values);

/// Estimate C_M by maximizing ||(M + lambda I)^{-1}||_inf over lambda = 0 and
/// a log-spaced grid up to lambda_max (default 1e6 * ||M||_inf, 200 samples).
/// Throws WellPosednessError if M has a real negative eigenvalue or a grid
/// point renders M + lambda I numerically singular.
ResolventEstimate estimate_resolvent_bound(const CollocationMatrices& matrices,
                                           double lambda_max = 0.0, int samples = 200);

}  // namespace fraccol

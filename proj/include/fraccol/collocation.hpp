#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fraccol/densemat.hpp"

namespace fraccol {

enum class PointFamily { chebyshev, equidistant, lobatto, custom };

/// Parse a family name ("chebyshev", "equidistant", "lobatto"); throws
/// DomainError on anything else. "custom" is not parseable by name because
/// custom rules carry their own point set.
PointFamily parse_point_family(std::string_view name);

std::string point_family_name(PointFamily family);

/// A set of collocation points 0 < theta_1 < ... < theta_m = 1 on the
/// reference interval. The right endpoint is stored as exactly 1 so the
/// stage recombination at the step endpoint is exact.
struct CollocationRule {
    int m = 0;
    std::vector<double> theta;
    PointFamily family = PointFamily::custom;
};

/// Collocation matrices for fractional order alpha:
///   W[l][j]    = theta_l^(j+1)                (monomial basis t, t^2, ..., t^m)
///   D1[l]      = theta_l^(-alpha)
///   D2[j]      = Gamma(j+2)/Gamma(j+2-alpha)  (power-rule coefficients c_{j+1})
///   M_alpha    = diag(D1) * W * diag(D2)
///   M          = M_alpha * W^{-1}
/// All indices 0-based; the monomial power of column j is j+1.
struct CollocationMatrices {
    double alpha = 0.0;
    DenseMatrix W;
    std::vector<double> D1;
    std::vector<double> D2;
    DenseMatrix M_alpha;
    DenseMatrix M;
};

/// Construct one of the built-in point families.
///   chebyshev:   theta_l = (cos(pi*(m-l)/m) + 1)/2,  l = 1..m
///   equidistant: theta_l = l/m
///   lobatto:     interior Gauss-Lobatto-Legendre nodes (roots of P'_m) mapped
///                to (0,1) by x -> (x+1)/2, plus the right endpoint 1; the
///                left endpoint 0 is dropped
/// Throws DomainError for m < 1 or family == custom.
CollocationRule make_points(PointFamily family, int m);

/// Validate a user-supplied point set: strictly increasing, all in (0, 1],
/// final point within 1e-12 of 1 (then stored as exactly 1).
CollocationRule make_custom_points(std::vector<double> theta);

/// Build W, D1, D2, M_alpha and M for the rule. M is obtained by solving
/// M*W = M_alpha column-wise with partially pivoted LU (never by forming
/// W^{-1}); the residual max|M*W - M_alpha| <= 1e-10 * max|M_alpha| is
/// verified and an Error is thrown if it fails.
CollocationMatrices build_matrices(const CollocationRule& rule, double alpha);

/// Closed-form determinant of W: (prod theta_j) * prod_{i<j} (theta_j - theta_i).
/// Strictly positive for any valid rule.
double vandermonde_det(const CollocationRule& rule);

/// Determinant of the generalized Vandermonde matrix [theta_i^{beta_k}],
/// computed with partially pivoted LU in long double after scaling each
/// column by its largest magnitude. Powers are evaluated as exp(beta*ln theta).
/// Requires 0 < theta_1 < ... < theta_m and 0 < beta_1 < ... < beta_m.
double generalized_vandermonde_det(std::span<const double> theta, std::span<const double> beta);

}  // namespace fraccol

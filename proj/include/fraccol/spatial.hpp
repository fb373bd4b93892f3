#pragma once

#include <span>
#include <vector>

#include "fraccol/densemat.hpp"

namespace fraccol {

/// Uniform 1D grid with N interior nodes on (xl, xr) and homogeneous
/// Dirichlet boundary values at xl and xr.
struct SpatialGrid {
    int N = 0;
    double xl = 0.0;
    double xr = 1.0;

    double h() const { return (xr - xl) / (N + 1); }
    /// Interior node i = 0..N-1.
    double x(int i) const { return xl + (i + 1) * h(); }
};

SpatialGrid make_grid(int N, double xl, double xr);

/// Coefficient function from a small named catalog, carrying its analytic
/// derivative (used for the advection sign condition c - b'/2 >= 0).
class CoefficientFn {
  public:
    /// v
    static CoefficientFn constant(double v);
    /// p0 + p1*x
    static CoefficientFn linear(double p0, double p1);
    /// offset + amplitude * sin(frequency * x)
    static CoefficientFn sine(double offset, double amplitude, double frequency);
    /// coeffs[0] + coeffs[1]*x + ... (ascending powers)
    static CoefficientFn polynomial(std::vector<double> coeffs);

    double value(double x) const;
    double derivative(double x) const;

  private:
    enum class Kind { constant, linear, sine, polynomial };
    Kind kind_ = Kind::constant;
    std::vector<double> p_;
};

/// Coefficients of the elliptic operator
///   (L u)(x) = -(a(x) u')' + b(x) u' + c(x) u.
struct EllipticCoefficients {
    CoefficientFn a = CoefficientFn::constant(1.0);
    CoefficientFn b = CoefficientFn::constant(0.0);
    CoefficientFn c = CoefficientFn::constant(0.0);
};

/// Tridiagonal matrix acting on interior nodal values; sub/super have length
/// N-1, diag length N.
struct TridiagonalMatrix {
    std::vector<double> sub, diag, super;
    int size() const { return static_cast<int>(diag.size()); }
};

/// Second-order finite-difference discretization with midpoint-sampled a:
/// row i is -[a_{i+1/2}(u_{i+1}-u_i) - a_{i-1/2}(u_i-u_{i-1})]/h^2
///          + b_i (u_{i+1}-u_{i-1})/(2h) + c_i u_i,
/// with the homogeneous Dirichlet neighbors eliminated. Throws DomainError
/// if a is not strictly positive at every sampled point.
TridiagonalMatrix assemble_operator(const SpatialGrid& grid, const EllipticCoefficients& coeff);

/// True iff c(x_i) >= 0 at all nodes or c(x_i) - b'(x_i)/2 >= 0 at all nodes.
/// Callers may warn when this fails; assembly itself does not.
bool coercivity_sign_condition(const SpatialGrid& grid, const EllipticCoefficients& coeff);

/// Tridiagonal matrix-vector product.
std::vector<double> apply_operator(const TridiagonalMatrix& lh, std::span<const double> u);

/// Dense copy (for block assembly and test oracles).
DenseMatrix dense(const TridiagonalMatrix& lh);

}  // namespace fraccol

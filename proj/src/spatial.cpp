#include "fraccol/spatial.hpp"

#include <cmath>

#include "fraccol/errors.hpp"

namespace fraccol {

SpatialGrid make_grid(int N, double xl, double xr) {
    if (N < 1) throw DomainError("make_grid: N must be >= 1");
    if (!(xr > xl)) throw DomainError("make_grid: xr must exceed xl");
    return {N, xl, xr};
}

CoefficientFn CoefficientFn::constant(double v) {
    CoefficientFn f;
    f.kind_ = Kind::constant;
    f.p_ = {v};
    return f;
}

CoefficientFn CoefficientFn::linear(double p0, double p1) {
    CoefficientFn f;
    f.kind_ = Kind::linear;
    f.p_ = {p0, p1};
    return f;
}

CoefficientFn CoefficientFn::sine(double offset, double amplitude, double frequency) {
    CoefficientFn f;
    f.kind_ = Kind::sine;
    f.p_ = {offset, amplitude, frequency};
    return f;
}

CoefficientFn CoefficientFn::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw DomainError("CoefficientFn::polynomial: empty coefficient list");
    CoefficientFn f;
    f.kind_ = Kind::polynomial;
    f.p_ = std::move(coeffs);
    return f;
}

double CoefficientFn::value(double x) const {
    switch (kind_) {
        case Kind::constant: return p_[0];
        case Kind::linear: return p_[0] + p_[1] * x;
        case Kind::sine: return p_[0] + p_[1] * std::sin(p_[2] * x);
        case Kind::polynomial: {
            double v = 0.0;
            for (size_t k = p_.size(); k-- > 0;) v = v * x + p_[k];
            return v;
        }
    }
    throw DomainError("CoefficientFn: invalid kind");
}

double CoefficientFn::derivative(double x) const {
    switch (kind_) {
        case Kind::constant: return 0.0;
        case Kind::linear: return p_[1];
        case Kind::sine: return p_[1] * p_[2] * std::cos(p_[2] * x);
        case Kind::polynomial: {
            double v = 0.0;
            for (size_t k = p_.size(); k-- > 1;) v = v * x + k * p_[k];
            return v;
        }
    }
    throw DomainError("CoefficientFn: invalid kind");
}

TridiagonalMatrix assemble_operator(const SpatialGrid& grid, const EllipticCoefficients& coeff) {
    if (grid.N < 1) throw DomainError("assemble_operator: grid must have interior nodes");
    const int n = grid.N;
    const double h = grid.h();
    TridiagonalMatrix lh;
    lh.diag.resize(n);
    lh.sub.resize(n - 1);
    lh.super.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        const double xi = grid.x(i);
        const double a_plus = coeff.a.value(xi + 0.5 * h);
        const double a_minus = coeff.a.value(xi - 0.5 * h);
        if (!(a_plus > 0.0) || !(a_minus > 0.0))
            throw DomainError("assemble_operator: diffusion coefficient must be positive");
        const double bi = coeff.b.value(xi);
        lh.diag[i] = (a_plus + a_minus) / (h * h) + coeff.c.value(xi);
        if (i + 1 < n) lh.super[i] = -a_plus / (h * h) + bi / (2.0 * h);
        if (i > 0) lh.sub[i - 1] = -a_minus / (h * h) - bi / (2.0 * h);
    }
    return lh;
}

bool coercivity_sign_condition(const SpatialGrid& grid, const EllipticCoefficients& coeff) {
    bool c_nonneg = true, combo_nonneg = true;
    for (int i = 0; i < grid.N; ++i) {
        const double xi = grid.x(i);
        const double ci = coeff.c.value(xi);
        if (ci < 0.0) c_nonneg = false;
        if (ci - 0.5 * coeff.b.derivative(xi) < 0.0) combo_nonneg = false;
    }
    return c_nonneg || combo_nonneg;
}

std::vector<double> apply_operator(const TridiagonalMatrix& lh, std::span<const double> u) {
    const int n = lh.size();
    if (static_cast<int>(u.size()) != n) throw DomainError("apply_operator: dimension mismatch");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        double s = lh.diag[i] * u[i];
        if (i > 0) s += lh.sub[i - 1] * u[i - 1];
        if (i + 1 < n) s += lh.super[i] * u[i + 1];
        out[i] = s;
    }
    return out;
}

DenseMatrix dense(const TridiagonalMatrix& lh) {
    const int n = lh.size();
    DenseMatrix d(n, n);
    for (int i = 0; i < n; ++i) {
        d(i, i) = lh.diag[i];
        if (i > 0) d(i, i - 1) = lh.sub[i - 1];
        if (i + 1 < n) d(i, i + 1) = lh.super[i];
    }
    return d;
}

}  // namespace fraccol

#include "fraccol/catalog.hpp"

#include <cmath>
#include <numbers>

#include "fraccol/errors.hpp"
#include "fraccol/specfun.hpp"

namespace fraccol {

ScalarTimeFn ScalarTimeFn::constant(double v) {
    ScalarTimeFn fn;
    if (v != 0.0) fn.terms_.emplace_back(v, 0.0);
    return fn;
}

ScalarTimeFn ScalarTimeFn::power_sum(std::vector<std::pair<double, double>> terms) {
    for (const auto& [coef, power] : terms) {
        (void)coef;
        if (!(power >= 0.0)) throw DomainError("ScalarTimeFn: powers must be >= 0");
    }
    ScalarTimeFn fn;
    fn.terms_ = std::move(terms);
    return fn;
}

double ScalarTimeFn::operator()(double t) const {
    if (!(t >= 0.0)) throw DomainError("ScalarTimeFn: t must be >= 0");
    double value = 0.0;
    for (const auto& [coef, power] : terms_) {
        // std::pow(0, 0) == 1, so constant terms survive at t = 0.
        value += coef * std::pow(t, power);
    }
    return value;
}

SourceTerm SourceTerm::zero(int n) {
    if (n < 1) throw DomainError("SourceTerm::zero: n must be >= 1");
    SourceTerm src;
    src.n_ = n;
    src.has_exact_ = true;
    src.exact_time_ = ScalarTimeFn::zero();
    src.exact_shape_.assign(static_cast<std::size_t>(n), 0.0);
    return src;
}

SourceTerm SourceTerm::manufactured_sin_poly(const SpatialGrid& grid, const TridiagonalMatrix& lh,
                                             int degree, double alpha) {
    const int n = grid.N;
    if (lh.size() != n) throw DomainError("manufactured_sin_poly: operator size must match grid");
    if (degree < 1) throw DomainError("manufactured_sin_poly: degree must be >= 1");
    if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("manufactured_sin_poly: alpha must lie in (0,1]");

    std::vector<double> shape(static_cast<std::size_t>(n));
    const double width = grid.xr - grid.xl;
    for (int i = 0; i < n; ++i) {
        const double xhat = (grid.x(i) - grid.xl) / width;
        shape[static_cast<std::size_t>(i)] = std::sin(std::numbers::pi * xhat);
    }
    std::vector<double> lh_shape = apply_operator(lh, shape);

    SourceTerm src;
    src.n_ = n;
    const double cd = caputo_power_coefficient(degree, alpha);
    src.modes_.push_back(
        Mode{ScalarTimeFn::power_sum({{cd, static_cast<double>(degree) - alpha}}), shape});
    src.modes_.push_back(
        Mode{ScalarTimeFn::power_sum({{1.0, static_cast<double>(degree)}}), lh_shape});
    src.has_exact_ = true;
    src.exact_time_ = ScalarTimeFn::power_sum({{1.0, static_cast<double>(degree)}});
    src.exact_shape_ = shape;
    return src;
}

void SourceTerm::evaluate(double t, std::span<double> out) const {
    if (static_cast<int>(out.size()) != n_)
        throw DomainError("SourceTerm::evaluate: output span has wrong length");
    for (auto& v : out) v = 0.0;
    for (const auto& mode : modes_) {
        const double g = mode.time(t);
        for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] += g * mode.shape[static_cast<std::size_t>(i)];
    }
}

std::vector<double> SourceTerm::exact(double t) const {
    if (!has_exact_) throw DomainError("SourceTerm::exact: no exact solution attached");
    std::vector<double> u(static_cast<std::size_t>(n_), 0.0);
    const double g = exact_time_(t);
    for (int i = 0; i < n_; ++i) u[static_cast<std::size_t>(i)] = g * exact_shape_[static_cast<std::size_t>(i)];
    return u;
}

InitialCondition InitialCondition::zero() { return InitialCondition{}; }

InitialCondition InitialCondition::sine(double amplitude, int frequency) {
    if (frequency < 1) throw DomainError("InitialCondition::sine: frequency must be >= 1");
    InitialCondition ic;
    ic.amplitude_ = amplitude;
    ic.frequency_ = frequency;
    return ic;
}

std::vector<double> InitialCondition::sample(const SpatialGrid& grid) const {
    std::vector<double> u0(static_cast<std::size_t>(grid.N), 0.0);
    if (amplitude_ == 0.0) return u0;
    const double width = grid.xr - grid.xl;
    for (int i = 0; i < grid.N; ++i) {
        const double xhat = (grid.x(i) - grid.xl) / width;
        u0[static_cast<std::size_t>(i)] = amplitude_ * std::sin(frequency_ * std::numbers::pi * xhat);
    }
    return u0;
}

}  // namespace fraccol

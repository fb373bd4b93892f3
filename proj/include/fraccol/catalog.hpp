#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fraccol/spatial.hpp"

namespace fraccol {

/// Scalar function of time: a finite sum of power terms c * t^p with p >= 0.
class ScalarTimeFn {
  public:
    static ScalarTimeFn zero() { return ScalarTimeFn{}; }
    static ScalarTimeFn constant(double v);
    /// terms = {(coefficient, power), ...}, powers >= 0.
    static ScalarTimeFn power_sum(std::vector<std::pair<double, double>> terms);

    double operator()(double t) const;

  private:
    std::vector<std::pair<double, double>> terms_;
};

/// Space-time source f(x, t) for the linear problem, stored as a sum of
/// separable modes g_q(t) * w_q(x) sampled at the interior grid nodes.
/// Sources may carry exact-solution samples for error reporting.
class SourceTerm {
  public:
    /// f identically zero on n nodes, exact solution zero.
    static SourceTerm zero(int n);

    /// Source manufactured from the DISCRETE operator so that the collocation
    /// solution is exactly u(x_i, t) = sin(pi * xhat_i) * t^degree, with
    /// xhat = (x - xl)/(xr - xl):
    ///   f_h = c_degree * t^(degree-alpha) * s + t^degree * (Lh s),
    /// where s_i = sin(pi * xhat_i) and c_degree is the fractional power-rule
    /// coefficient. Requires degree >= 1 so the initial value is zero.
    static SourceTerm manufactured_sin_poly(const SpatialGrid& grid, const TridiagonalMatrix& lh,
                                            int degree, double alpha);

    int size() const { return n_; }
    /// Fill out (length n) with f(., t).
    void evaluate(double t, std::span<double> out) const;

    bool has_exact() const { return has_exact_; }
    /// Exact solution samples u(., t); valid only when has_exact().
    std::vector<double> exact(double t) const;

  private:
    struct Mode {
        ScalarTimeFn time;
        std::vector<double> shape;
    };
    std::vector<Mode> modes_;
    int n_ = 0;
    bool has_exact_ = false;
    ScalarTimeFn exact_time_;
    std::vector<double> exact_shape_;

    friend class SemilinearSource;
};

/// Initial condition sampler at the interior grid nodes.
class InitialCondition {
  public:
    static InitialCondition zero();
    /// amplitude * sin(frequency * pi * xhat), xhat normalized to (0,1).
    static InitialCondition sine(double amplitude, int frequency);

    std::vector<double> sample(const SpatialGrid& grid) const;

  private:
    double amplitude_ = 0.0;
    int frequency_ = 1;
};

}  // namespace fraccol

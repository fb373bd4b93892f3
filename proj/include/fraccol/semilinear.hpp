#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fraccol/stepper.hpp"
#include "fraccol/wellposed.hpp"

namespace fraccol {

/// Semilinear source f(x, t, u) = amplitude * sin(u) + g(x, t) with Lipschitz
/// constant mu >= |amplitude| in u.
class SemilinearSource {
  public:
    /// g manufactured so the exact collocation solution is
    /// sin(pi xhat) * t^degree: f(x,t,u) = A sin(u) + [f_lin(x,t) - A sin(u_exact(x,t))]
    /// with f_lin the manufactured linear source for the same exact solution.
    /// mu defaults to |amplitude|; an explicit value must be >= |amplitude|.
    static SemilinearSource sin_coupling(const SpatialGrid& grid, const TridiagonalMatrix& lh,
                                         double amplitude, int degree, double alpha,
                                         std::optional<double> mu = std::nullopt);

    /// Plain forcing f(x,t,u) = A sin(u) + g(x,t) with a caller-supplied g and
    /// no exact-solution reference.
    static SemilinearSource sin_forcing(SourceTerm g, double amplitude,
                                        std::optional<double> mu = std::nullopt);

    int size() const { return g_.size(); }
    double mu() const { return mu_; }
    /// out = f(., t, u).
    void evaluate(double t, std::span<const double> u, std::span<double> out) const;

    bool has_exact() const { return g_.has_exact(); }
    std::vector<double> exact(double t) const { return g_.exact(t); }

  private:
    SemilinearSource(SourceTerm g, double amplitude, bool subtract_exact, double mu);

    SourceTerm g_;
    double amplitude_ = 0.0;
    bool subtract_exact_ = false;  // sin_coupling folds -A sin(u_exact) into g
    double mu_ = 0.0;
};

/// Semilinear subdiffusion d^alpha u + Lh u = f(x, t, u). The reaction
/// coefficient c must be identically zero: a u-proportional term belongs in f.
struct SemilinearProblem {
    double alpha = 0.5;
    CollocationRule rule;
    TemporalMesh mesh;
    SpatialGrid grid;
    EllipticCoefficients coeff;
    SemilinearSource source;
    InitialCondition initial;
    double tol = 1e-11;
    int max_iter = 100;
};

struct SemilinearStepReport {
    int k = 0;
    int iterations = 0;        // linear solves performed
    double final_update = 0.0; // last max-norm stage update
    std::vector<double> update_norms;
    double contraction_bound = 0.0;  // tau_k^alpha * mu * C_M
    bool check_failed = false;       // contraction_bound >= 1 (advisory)
};

struct SemilinearSolveReport {
    PiecewiseSolution solution;
    std::vector<SemilinearStepReport> steps;
    double C_M = 0.0;
    bool any_check_failed = false;
};

/// True iff tau^alpha * mu * C_M < 1 (sufficient for the step fixed-point map
/// to be a strict contraction).
bool contraction_check(const CollocationRule& rule, double alpha, double tau, double mu,
                       const ResolventEstimate& resolvent);

/// One fixed-point step on interval k: sol must hold U_0..U_{k-1} and
/// V_1..V_{k-1}; on success V_k and U_k are appended. Iterates the linear
/// step with f frozen at the current stage values, starting from the previous
/// time level, until the max-norm stage update drops below tol. Throws
/// ConvergenceError (with the contraction estimate in the message) when
/// max_iter is exceeded.
SemilinearStepReport step_semilinear(const SemilinearProblem& problem, PiecewiseSolution& sol,
                                     int k, double tol, int max_iter);

/// Full march: eigenvalue certificate gate, C_M estimate, then
/// step_semilinear for k = 1..M.
SemilinearSolveReport solve_semilinear(const SemilinearProblem& problem);

/// Collocation residual with f frozen at the converged stage values.
ResidualReport semilinear_residual(const PiecewiseSolution& sol,
                                   const SemilinearProblem& problem);

}  // namespace fraccol

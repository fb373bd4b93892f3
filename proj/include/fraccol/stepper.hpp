#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fraccol/catalog.hpp"
#include "fraccol/collocation.hpp"
#include "fraccol/densemat.hpp"
#include "fraccol/history.hpp"
#include "fraccol/mesh.hpp"
#include "fraccol/spatial.hpp"

namespace fraccol {

/// Linear time-fractional subdiffusion problem
///   d^alpha u / dt^alpha + Lh u = f,  u(0) = u0,
/// discretized by continuous collocation of order m in time on a graded mesh
/// and by the finite-difference operator Lh in space.
struct SubdiffusionProblem {
    double alpha = 0.5;
    CollocationRule rule;
    TemporalMesh mesh;
    SpatialGrid grid;
    EllipticCoefficients coeff;
    SourceTerm source;
    InitialCondition initial;
};

/// Piecewise-polynomial-in-time solution: on interval k the solution is
///   U(t) = U_{k-1} + sum_{j=1..m} V_k(j, .) s^j,  s = (t - t_{k-1}) / tau_k,
/// so it is continuous with U_k = value at s = 1.
struct PiecewiseSolution {
    double alpha = 0.5;
    CollocationRule rule;
    TemporalMesh mesh;
    std::vector<std::vector<double>> U;  // M+1 nodal vectors (length N)
    std::vector<DenseMatrix> V;          // M blocks, each m x N; V[k-1](j-1, i) = V_{k,j,i}
};

/// One interval's assembled block system. Unknowns stack the coefficient rows
/// j = 1..m, each an N-vector: x[(j-1)*N + i] = V_k(j-1, i).
struct StepSystem {
    DenseMatrix matrix;            // mN x mN
    std::vector<double> rhs;       // full right-hand side (source included)
    std::vector<double> rhs_base;  // source-independent part of rhs
    std::vector<double> times;     // collocation times t_k^ell, ell = 1..m
    double tau_alpha = 0.0;        // tau_k^alpha
};

/// Block matrix B with B[(l,i),(j,i')] = (D1 W D2)_{lj} delta_{ii'}
///                                     + tau_alpha * W_{lj} * (Lh)_{ii'}.
DenseMatrix build_step_matrix(const CollocationMatrices& cm, const TridiagonalMatrix& lh,
                              double tau_alpha);

/// Memory vectors for interval k at each collocation point (m vectors of
/// length n). Returns zero vectors for k = 1. blocks[j-1] is interval j's
/// coefficient block; only blocks 1..k-1 are read.
std::vector<std::vector<double>> history_terms(const TemporalMesh& mesh,
                                               const std::vector<DenseMatrix>& blocks,
                                               const CollocationRule& rule, double alpha, int k,
                                               int n);

/// Assemble the interval-k system given the previous nodal values and the
/// per-collocation-point memory vectors:
///   rhs_l = tau^alpha * (f(., t_k^l) - Lh U_{k-1} - history_l).
StepSystem assemble_step(const SubdiffusionProblem& problem, int k,
                         const std::vector<std::vector<double>>& history,
                         std::span<const double> u_prev);

struct StepDiagnostics {
    int k = 0;
    double tau = 0.0;
    double solve_residual = 0.0;  // ||B v - rhs||_inf / (||B||_inf ||v||_inf + ||rhs||_inf)
};

struct SolveReport {
    PiecewiseSolution solution;
    std::vector<StepDiagnostics> steps;
    double max_solve_residual = 0.0;
};

/// March k = 1..M solving each block system by dense LU. Refuses to run when
/// the collocation eigenvalue certificate fails (a real negative eigenvalue
/// of M means the scheme is not certified solvable); throws
/// WellPosednessError then, or when a step system is singular. The block size
/// m*N is capped at 4000.
SolveReport solve(const SubdiffusionProblem& problem);

/// Value of the solution at time t (all spatial nodes), by Horner evaluation
/// of the local polynomial. Exact (bitwise) at mesh nodes: t = t_k returns
/// U_k. Throws DomainError for t outside [0, T].
std::vector<double> evaluate(const PiecewiseSolution& sol, double t);

/// Convenience: single spatial node.
double evaluate_at(const PiecewiseSolution& sol, int node, double t);

/// Value of interval k's local polynomial at local coordinate s in [0, 1]:
/// U_{k-1} + sum_j V_k(j, .) s^{j+1}. s = theta_l gives the stage value at
/// collocation point t_k^l; s = 1 gives U_k bitwise.
std::vector<double> local_stage_value(const PiecewiseSolution& sol, int k, double s);

struct ResidualReport {
    double max_abs = 0.0;  // max over (k, l, node) of |d^alpha U + Lh U - f|
    double scale = 1.0;    // max(1, max |f| over collocation samples)
};

/// Residual of the collocation equations with caller-supplied source samples:
/// f_at(k, ell, t, out) must fill out (length N) with the source at t_k^ell.
/// The fractional derivative is reconstructed as
/// tau_k^{-alpha} (D1 W D2 V_k)_l + history_l.
ResidualReport collocation_residual_with(
    const PiecewiseSolution& sol, const TridiagonalMatrix& lh,
    const std::function<void(int, int, double, std::span<double>)>& f_at);

/// Residual of a linear solve against its own problem data.
ResidualReport collocation_residual(const PiecewiseSolution& sol,
                                    const SubdiffusionProblem& problem);

/// Scalar fractional ODE  d^alpha u + c(t) u = f(t),  u(0) = u0.
struct FodeProblem {
    double alpha = 0.5;
    CollocationRule rule;
    TemporalMesh mesh;
    ScalarTimeFn c;
    ScalarTimeFn f;
    double u0 = 0.0;
};

struct FodeReport {
    PiecewiseSolution solution;       // N = 1
    std::vector<int> stepsize_warnings;  // intervals where the sufficient stepsize bound failed
    double worst_step_bound = 0.0;       // max over k of tau_k^alpha * ||(D1 W D2)^{-1} D_c W||_inf
};

/// Solve the scalar problem: per step (D1 W D2 + tau^alpha D_c W) V = F with
/// D_c = diag(c(t_k^l)). The stepsize criterion is advisory (collected as
/// warnings, not errors — it is sufficient, not necessary).
FodeReport solve_fode(const FodeProblem& problem);

}  // namespace fraccol

#include "fraccol/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fraccol/denselin.hpp"
#include "fraccol/errors.hpp"

namespace fraccol {

namespace {

void validate_semilinear(const SemilinearProblem& p) {
    if (!(p.alpha > 0.0) || p.alpha > 1.0)
        throw DomainError("solve_semilinear: alpha must lie in (0, 1]");
    if (p.source.size() != p.grid.N)
        throw DomainError("solve_semilinear: source length must match the spatial grid");
    if (!(p.tol > 0.0)) throw DomainError("solve_semilinear: tol must be positive");
    if (p.max_iter < 1) throw DomainError("solve_semilinear: max_iter must be >= 1");
    // The reaction coefficient is folded into f for semilinear problems.
    const double h = p.grid.h();
    for (int i = 0; i <= p.grid.N; ++i) {
        const double x = p.grid.xl + (i + 0.5) * h;
        if (p.coeff.c.value(p.grid.xl + i * h) != 0.0 ||
            (i < p.grid.N && p.coeff.c.value(x) != 0.0))
            throw DomainError(
                "solve_semilinear: the reaction coefficient c must be identically zero; "
                "fold u-proportional terms into the source");
    }
}

}  // namespace

SemilinearSource::SemilinearSource(SourceTerm g, double amplitude, bool subtract_exact, double mu)
    : g_(std::move(g)), amplitude_(amplitude), subtract_exact_(subtract_exact), mu_(mu) {}

SemilinearSource SemilinearSource::sin_coupling(const SpatialGrid& grid,
                                                const TridiagonalMatrix& lh, double amplitude,
                                                int degree, double alpha,
                                                std::optional<double> mu) {
    if (!std::isfinite(amplitude)) throw DomainError("sin_coupling: amplitude must be finite");
    const double bound = mu.value_or(std::fabs(amplitude));
    if (!(bound >= std::fabs(amplitude)))
        throw DomainError("sin_coupling: mu must be >= |amplitude| (it bounds |df/du|)");
    SourceTerm g = SourceTerm::manufactured_sin_poly(grid, lh, degree, alpha);
    return SemilinearSource(std::move(g), amplitude, /*subtract_exact=*/true, bound);
}

SemilinearSource SemilinearSource::sin_forcing(SourceTerm g, double amplitude,
                                               std::optional<double> mu) {
    if (!std::isfinite(amplitude)) throw DomainError("sin_forcing: amplitude must be finite");
    const double bound = mu.value_or(std::fabs(amplitude));
    if (!(bound >= std::fabs(amplitude)))
        throw DomainError("sin_forcing: mu must be >= |amplitude| (it bounds |df/du|)");
    return SemilinearSource(std::move(g), amplitude, /*subtract_exact=*/false, bound);
}

void SemilinearSource::evaluate(double t, std::span<const double> u, std::span<double> out) const {
    const int n = g_.size();
    if (static_cast<int>(u.size()) != n || static_cast<int>(out.size()) != n)
        throw DomainError("SemilinearSource::evaluate: span length mismatch");
    g_.evaluate(t, out);
    if (amplitude_ == 0.0) return;  // keep the linear path's values bit-for-bit
    if (subtract_exact_) {
        const std::vector<double> ex = g_.exact(t);
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] +=
                amplitude_ * (std::sin(u[static_cast<std::size_t>(i)]) -
                              std::sin(ex[static_cast<std::size_t>(i)]));
    } else {
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] += amplitude_ * std::sin(u[static_cast<std::size_t>(i)]);
    }
}

bool contraction_check(const CollocationRule& rule, double alpha, double tau, double mu,
                       const ResolventEstimate& resolvent) {
    if (rule.m < 1) throw DomainError("contraction_check: rule must have m >= 1");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("contraction_check: alpha must lie in (0, 1]");
    if (!(tau > 0.0)) throw DomainError("contraction_check: tau must be positive");
    if (!(mu >= 0.0)) throw DomainError("contraction_check: mu must be >= 0");
    return std::pow(tau, alpha) * mu * resolvent.C_M < 1.0;
}

SemilinearStepReport step_semilinear(const SemilinearProblem& problem, PiecewiseSolution& sol,
                                     int k, double tol, int max_iter) {
    validate_semilinear(problem);
    if (k < 1 || k > problem.mesh.M)
        throw DomainError("step_semilinear: interval index out of range");
    if (sol.U.size() != static_cast<std::size_t>(k) ||
        sol.V.size() != static_cast<std::size_t>(k - 1))
        throw DomainError("step_semilinear: solution must hold exactly intervals 1..k-1");
    if (!(tol > 0.0)) throw DomainError("step_semilinear: tol must be positive");
    if (max_iter < 1) throw DomainError("step_semilinear: max_iter must be >= 1");

    const int m = problem.rule.m;
    const int n = problem.grid.N;
    const std::vector<double>& u_prev = sol.U[static_cast<std::size_t>(k - 1)];

    // The linear step machinery assembles the matrix and the source-free part
    // of the right-hand side; the iteration only refreshes the source term.
    const SubdiffusionProblem linear{problem.alpha, problem.rule, problem.mesh,
                                     problem.grid,  problem.coeff, SourceTerm::zero(n),
                                     problem.initial};
    const auto history = history_terms(problem.mesh, sol.V, problem.rule, problem.alpha, k, n);
    const StepSystem sys = assemble_step(linear, k, history, u_prev);

    const CollocationMatrices cm = build_matrices(problem.rule, problem.alpha);
    const ResolventEstimate resolvent = estimate_resolvent_bound(cm);

    SemilinearStepReport report;
    report.k = k;
    report.contraction_bound = sys.tau_alpha * problem.source.mu() * resolvent.C_M;
    report.check_failed = !(report.contraction_bound < 1.0);

    LuFactors lu = [&]() {
        try {
            return LuFactors(sys.matrix);
        } catch (const SingularMatrixError&) {
            char msg[96];
            std::snprintf(msg, sizeof(msg), "step_semilinear: singular step system at interval k=%d",
                          k);
            throw WellPosednessError(msg);
        }
    }();

    std::vector<std::vector<double>> stages(static_cast<std::size_t>(m), u_prev);
    std::vector<double> fvec(static_cast<std::size_t>(n));
    std::vector<double> rhs(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
    std::vector<double> newstage(static_cast<std::size_t>(n));
    DenseMatrix vk(m, n);

    for (int iter = 1; iter <= max_iter; ++iter) {
        for (int l = 0; l < m; ++l) {
            problem.source.evaluate(sys.times[static_cast<std::size_t>(l)],
                                    stages[static_cast<std::size_t>(l)], fvec);
            for (int i = 0; i < n; ++i) {
                const std::size_t idx = static_cast<std::size_t>(l) * static_cast<std::size_t>(n) +
                                        static_cast<std::size_t>(i);
                rhs[idx] = sys.rhs_base[idx] + sys.tau_alpha * fvec[static_cast<std::size_t>(i)];
            }
        }
        std::vector<double> x = rhs;
        lu.solve(x);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) vk(j, i) = x[static_cast<std::size_t>(j * n + i)];

        double update = 0.0;
        for (int l = 0; l < m; ++l) {
            const double theta = problem.rule.theta[static_cast<std::size_t>(l)];
            for (int i = 0; i < n; ++i) {
                double acc = vk(m - 1, i);
                for (int j = m - 2; j >= 0; --j) acc = vk(j, i) + theta * acc;
                newstage[static_cast<std::size_t>(i)] =
                    u_prev[static_cast<std::size_t>(i)] + theta * acc;
            }
            for (int i = 0; i < n; ++i)
                update = std::max(update, std::fabs(newstage[static_cast<std::size_t>(i)] -
                                                    stages[static_cast<std::size_t>(l)]
                                                          [static_cast<std::size_t>(i)]));
            stages[static_cast<std::size_t>(l)] = newstage;
        }
        report.update_norms.push_back(update);
        report.iterations = iter;
        report.final_update = update;
        if (update <= tol) {
            sol.V.push_back(vk);
            sol.U.push_back(local_stage_value(sol, k, 1.0));
            return report;
        }
    }
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "step_semilinear: no convergence at interval k=%d after %d iterations "
                  "(last update %.3e, contraction bound tau^alpha*mu*C_M = %.3f)",
                  k, max_iter, report.final_update, report.contraction_bound);
    throw ConvergenceError(msg, k);
}

SemilinearSolveReport solve_semilinear(const SemilinearProblem& problem) {
    validate_semilinear(problem);
    const SpectrumReport cert = spectrum(problem.rule, problem.alpha);
    if (cert.has_real_negative)
        throw WellPosednessError(
            "solve_semilinear: collocation matrix has a real negative eigenvalue; the scheme "
            "is not certified solvable for this rule and alpha");
    const CollocationMatrices cm = build_matrices(problem.rule, problem.alpha);
    const ResolventEstimate resolvent = estimate_resolvent_bound(cm);

    SemilinearSolveReport report;
    report.C_M = resolvent.C_M;
    PiecewiseSolution& sol = report.solution;
    sol.alpha = problem.alpha;
    sol.rule = problem.rule;
    sol.mesh = problem.mesh;
    sol.U.push_back(problem.initial.sample(problem.grid));
    sol.V.reserve(static_cast<std::size_t>(problem.mesh.M));

    for (int k = 1; k <= problem.mesh.M; ++k) {
        SemilinearStepReport step =
            step_semilinear(problem, sol, k, problem.tol, problem.max_iter);
        report.any_check_failed = report.any_check_failed || step.check_failed;
        report.steps.push_back(std::move(step));
    }
    return report;
}

ResidualReport semilinear_residual(const PiecewiseSolution& sol,
                                   const SemilinearProblem& problem) {
    const TridiagonalMatrix lh = assemble_operator(problem.grid, problem.coeff);
    return collocation_residual_with(
        sol, lh, [&sol, &problem](int k, int l, double t, std::span<double> out) {
            const double theta = sol.rule.theta[static_cast<std::size_t>(l)];
            const std::vector<double> stage = local_stage_value(sol, k, theta);
            problem.source.evaluate(t, stage, out);
        });
}

}  // namespace fraccol

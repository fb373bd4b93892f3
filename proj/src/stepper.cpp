#include "fraccol/stepper.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>

#include "fraccol/denselin.hpp"
#include "fraccol/errors.hpp"
#include "fraccol/wellposed.hpp"

namespace fraccol {

namespace {

constexpr int kMaxBlockSize = 4000;

void validate_problem(const SubdiffusionProblem& p) {
    if (!(p.alpha > 0.0) || p.alpha > 1.0)
        throw DomainError("solve: alpha must lie in (0, 1]");
    if (p.source.size() != p.grid.N)
        throw DomainError("solve: source length must match the spatial grid");
    if (p.rule.m * p.grid.N > kMaxBlockSize)
        throw DomainError("solve: block size m*N exceeds the dense-LU cap of 4000");
}

/// U_{k-1} + sum_j V(j, i) s^{j+1} by Horner, written into out.
void local_value(std::span<const double> u_prev, const DenseMatrix& v, double s,
                 std::span<double> out) {
    const int m = v.rows();
    const int n = v.cols();
    for (int i = 0; i < n; ++i) {
        double acc = v(m - 1, i);
        for (int j = m - 2; j >= 0; --j) acc = v(j, i) + s * acc;
        out[static_cast<std::size_t>(i)] = u_prev[static_cast<std::size_t>(i)] + s * acc;
    }
}

StepSystem assemble_core(const CollocationMatrices& cm, const TridiagonalMatrix& lh,
                         const TemporalMesh& mesh, double alpha, int k,
                         const std::vector<std::vector<double>>& history,
                         std::span<const double> u_prev, const SourceTerm& source) {
    const int m = cm.W.rows();
    const int n = lh.size();
    if (static_cast<int>(u_prev.size()) != n)
        throw DomainError("assemble_step: previous nodal vector has wrong length");
    if (static_cast<int>(history.size()) != m)
        throw DomainError("assemble_step: expected one history vector per collocation point");
    for (const auto& h : history)
        if (static_cast<int>(h.size()) != n)
            throw DomainError("assemble_step: history vector has wrong length");

    const double tau = mesh.tau(k);
    const double tau_alpha = std::pow(tau, alpha);

    StepSystem sys;
    sys.tau_alpha = tau_alpha;
    sys.matrix = build_step_matrix(cm, lh, tau_alpha);
    sys.times.resize(static_cast<std::size_t>(m));
    sys.rhs.resize(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
    sys.rhs_base.resize(sys.rhs.size());

    const std::vector<double> lhu = apply_operator(lh, u_prev);
    std::vector<double> fvec(static_cast<std::size_t>(n));
    for (int l = 0; l < m; ++l) {
        const double t = mesh.nodes[static_cast<std::size_t>(k - 1)] + tau * cm.W(l, 0);
        sys.times[static_cast<std::size_t>(l)] = t;
        source.evaluate(t, fvec);
        const auto& hist = history[static_cast<std::size_t>(l)];
        for (int i = 0; i < n; ++i) {
            const std::size_t idx =
                static_cast<std::size_t>(l) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
            sys.rhs_base[idx] =
                tau_alpha * (-lhu[static_cast<std::size_t>(i)] - hist[static_cast<std::size_t>(i)]);
            sys.rhs[idx] = sys.rhs_base[idx] + tau_alpha * fvec[static_cast<std::size_t>(i)];
        }
    }
    return sys;
}

double relative_solve_residual(const DenseMatrix& b, std::span<const double> x,
                               std::span<const double> rhs) {
    const int n = b.rows();
    double rmax = 0.0, rhsmax = 0.0, xmax = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += b(i, j) * x[static_cast<std::size_t>(j)];
        rmax = std::max(rmax, std::fabs(acc - rhs[static_cast<std::size_t>(i)]));
        rhsmax = std::max(rhsmax, std::fabs(rhs[static_cast<std::size_t>(i)]));
        xmax = std::max(xmax, std::fabs(x[static_cast<std::size_t>(i)]));
    }
    return rmax / (b.norm_inf() * xmax + rhsmax + DBL_MIN);
}

}  // namespace

DenseMatrix build_step_matrix(const CollocationMatrices& cm, const TridiagonalMatrix& lh,
                              double tau_alpha) {
    const int m = cm.W.rows();
    const int n = lh.size();
    DenseMatrix b(m * n, m * n);
    for (int l = 0; l < m; ++l) {
        for (int j = 0; j < m; ++j) {
            const int row0 = l * n, col0 = j * n;
            const double malpha = cm.M_alpha(l, j);
            const double w = tau_alpha * cm.W(l, j);
            for (int i = 0; i < n; ++i) {
                b(row0 + i, col0 + i) += malpha + w * lh.diag[static_cast<std::size_t>(i)];
                if (i > 0) b(row0 + i, col0 + i - 1) += w * lh.sub[static_cast<std::size_t>(i - 1)];
                if (i < n - 1) b(row0 + i, col0 + i + 1) += w * lh.super[static_cast<std::size_t>(i)];
            }
        }
    }
    return b;
}

std::vector<std::vector<double>> history_terms(const TemporalMesh& mesh,
                                               const std::vector<DenseMatrix>& blocks,
                                               const CollocationRule& rule, double alpha, int k,
                                               int n) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(rule.m));
    for (int l = 0; l < rule.m; ++l) {
        if (k == 1) {
            out[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(n), 0.0);
        } else {
            out[static_cast<std::size_t>(l)] = caputo_history_term(mesh, blocks, rule, alpha, k, l);
            if (static_cast<int>(out[static_cast<std::size_t>(l)].size()) != n)
                throw DomainError("history_terms: block width does not match n");
        }
    }
    return out;
}

StepSystem assemble_step(const SubdiffusionProblem& problem, int k,
                         const std::vector<std::vector<double>>& history,
                         std::span<const double> u_prev) {
    validate_problem(problem);
    if (k < 1 || k > problem.mesh.M) throw DomainError("assemble_step: interval index out of range");
    const CollocationMatrices cm = build_matrices(problem.rule, problem.alpha);
    const TridiagonalMatrix lh = assemble_operator(problem.grid, problem.coeff);
    return assemble_core(cm, lh, problem.mesh, problem.alpha, k, history, u_prev, problem.source);
}

SolveReport solve(const SubdiffusionProblem& problem) {
    validate_problem(problem);
    const SpectrumReport cert = spectrum(problem.rule, problem.alpha);
    if (cert.has_real_negative)
        throw WellPosednessError(
            "solve: collocation matrix has a real negative eigenvalue; the scheme is not "
            "certified solvable for this rule and alpha");

    const CollocationMatrices cm = build_matrices(problem.rule, problem.alpha);
    const TridiagonalMatrix lh = assemble_operator(problem.grid, problem.coeff);
    const int m = problem.rule.m;
    const int n = problem.grid.N;
    const int mmax = problem.mesh.M;

    SolveReport report;
    PiecewiseSolution& sol = report.solution;
    sol.alpha = problem.alpha;
    sol.rule = problem.rule;
    sol.mesh = problem.mesh;
    sol.U.resize(static_cast<std::size_t>(mmax) + 1);
    sol.U[0] = problem.initial.sample(problem.grid);
    sol.V.reserve(static_cast<std::size_t>(mmax));

    for (int k = 1; k <= mmax; ++k) {
        const auto history = history_terms(problem.mesh, sol.V, problem.rule, problem.alpha, k, n);
        StepSystem sys = assemble_core(cm, lh, problem.mesh, problem.alpha, k, history,
                                       sol.U[static_cast<std::size_t>(k - 1)], problem.source);
        std::vector<double> x = sys.rhs;
        try {
            LuFactors lu(sys.matrix);
            lu.solve(x);
        } catch (const SingularMatrixError&) {
            char msg[128];
            std::snprintf(msg, sizeof(msg),
                          "solve: singular step system at interval k=%d (well-posedness violation)",
                          k);
            throw WellPosednessError(msg);
        }
        DenseMatrix vk(m, n);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) vk(j, i) = x[static_cast<std::size_t>(j * n + i)];

        StepDiagnostics diag;
        diag.k = k;
        diag.tau = problem.mesh.tau(k);
        diag.solve_residual = relative_solve_residual(sys.matrix, x, sys.rhs);
        report.max_solve_residual = std::max(report.max_solve_residual, diag.solve_residual);
        report.steps.push_back(diag);

        std::vector<double> uk(static_cast<std::size_t>(n));
        local_value(sol.U[static_cast<std::size_t>(k - 1)], vk, 1.0, uk);
        sol.V.push_back(std::move(vk));
        sol.U[static_cast<std::size_t>(k)] = std::move(uk);
    }
    return report;
}

std::vector<double> evaluate(const PiecewiseSolution& sol, double t) {
    const auto& nodes = sol.mesh.nodes;
    if (!(t >= nodes.front()) || t > nodes.back())
        throw DomainError("evaluate: t outside [0, T]");
    if (t == nodes.front()) return sol.U[0];
    const auto it = std::lower_bound(nodes.begin() + 1, nodes.end(), t);
    const int k = static_cast<int>(it - nodes.begin());
    const double s = (t - nodes[static_cast<std::size_t>(k - 1)]) / sol.mesh.tau(k);
    const DenseMatrix& vk = sol.V[static_cast<std::size_t>(k - 1)];
    std::vector<double> out(static_cast<std::size_t>(vk.cols()));
    local_value(sol.U[static_cast<std::size_t>(k - 1)], vk, s, out);
    return out;
}

double evaluate_at(const PiecewiseSolution& sol, int node, double t) {
    const std::vector<double> u = evaluate(sol, t);
    if (node < 0 || node >= static_cast<int>(u.size()))
        throw DomainError("evaluate_at: node index out of range");
    return u[static_cast<std::size_t>(node)];
}

std::vector<double> local_stage_value(const PiecewiseSolution& sol, int k, double s) {
    if (k < 1 || k > static_cast<int>(sol.V.size()))
        throw DomainError("local_stage_value: interval index out of range");
    if (!(s >= 0.0) || s > 1.0) throw DomainError("local_stage_value: s must lie in [0, 1]");
    const DenseMatrix& vk = sol.V[static_cast<std::size_t>(k - 1)];
    std::vector<double> out(static_cast<std::size_t>(vk.cols()));
    local_value(sol.U[static_cast<std::size_t>(k - 1)], vk, s, out);
    return out;
}

ResidualReport collocation_residual_with(
    const PiecewiseSolution& sol, const TridiagonalMatrix& lh,
    const std::function<void(int, int, double, std::span<double>)>& f_at) {
    const int m = sol.rule.m;
    const int n = lh.size();
    ResidualReport rep;
    std::vector<double> stage(static_cast<std::size_t>(n));
    std::vector<double> fvec(static_cast<std::size_t>(n));
    const CollocationMatrices cm = build_matrices(sol.rule, sol.alpha);
    for (int k = 1; k <= sol.mesh.M; ++k) {
        const double tau = sol.mesh.tau(k);
        const double tau_malpha = std::pow(tau, -sol.alpha);
        const DenseMatrix& vk = sol.V[static_cast<std::size_t>(k - 1)];
        for (int l = 0; l < m; ++l) {
            const std::vector<double> hist =
                caputo_history_term(sol.mesh, sol.V, sol.rule, sol.alpha, k, l);
            const double theta = sol.rule.theta[static_cast<std::size_t>(l)];
            const double t = sol.mesh.nodes[static_cast<std::size_t>(k - 1)] + tau * theta;
            local_value(sol.U[static_cast<std::size_t>(k - 1)], vk, theta, stage);
            const std::vector<double> lhu = apply_operator(lh, stage);
            f_at(k, l, t, fvec);
            for (int i = 0; i < n; ++i) {
                double dalpha = 0.0;
                for (int j = 0; j < m; ++j) dalpha += cm.M_alpha(l, j) * vk(j, i);
                dalpha *= tau_malpha;
                if (k > 1) dalpha += hist[static_cast<std::size_t>(i)];
                const double r = dalpha + lhu[static_cast<std::size_t>(i)] -
                                 fvec[static_cast<std::size_t>(i)];
                rep.max_abs = std::max(rep.max_abs, std::fabs(r));
                rep.scale = std::max(rep.scale, std::fabs(fvec[static_cast<std::size_t>(i)]));
            }
        }
    }
    return rep;
}

ResidualReport collocation_residual(const PiecewiseSolution& sol,
                                    const SubdiffusionProblem& problem) {
    const TridiagonalMatrix lh = assemble_operator(problem.grid, problem.coeff);
    return collocation_residual_with(
        sol, lh, [&problem](int, int, double t, std::span<double> out) {
            problem.source.evaluate(t, out);
        });
}

FodeReport solve_fode(const FodeProblem& problem) {
    if (!(problem.alpha > 0.0) || problem.alpha > 1.0)
        throw DomainError("solve_fode: alpha must lie in (0, 1]");
    const CollocationMatrices cm = build_matrices(problem.rule, problem.alpha);
    const int m = problem.rule.m;
    const int mmax = problem.mesh.M;

    FodeReport report;
    PiecewiseSolution& sol = report.solution;
    sol.alpha = problem.alpha;
    sol.rule = problem.rule;
    sol.mesh = problem.mesh;
    sol.U.assign(static_cast<std::size_t>(mmax) + 1, std::vector<double>(1, 0.0));
    sol.U[0][0] = problem.u0;
    sol.V.reserve(static_cast<std::size_t>(mmax));

    std::vector<double> cvals(static_cast<std::size_t>(m));
    for (int k = 1; k <= mmax; ++k) {
        const double tau = sol.mesh.tau(k);
        const double tau_alpha = std::pow(tau, problem.alpha);
        const double u_prev = sol.U[static_cast<std::size_t>(k - 1)][0];

        const auto history = history_terms(sol.mesh, sol.V, sol.rule, problem.alpha, k, 1);
        DenseMatrix b(m, m);
        std::vector<double> rhs(static_cast<std::size_t>(m));
        for (int l = 0; l < m; ++l) {
            const double t =
                sol.mesh.nodes[static_cast<std::size_t>(k - 1)] + tau * sol.rule.theta[static_cast<std::size_t>(l)];
            const double cl = problem.c(t);
            cvals[static_cast<std::size_t>(l)] = cl;
            for (int j = 0; j < m; ++j) b(l, j) = cm.M_alpha(l, j) + tau_alpha * cl * cm.W(l, j);
            rhs[static_cast<std::size_t>(l)] =
                tau_alpha * (problem.f(t) - cl * u_prev - history[static_cast<std::size_t>(l)][0]);
        }

        const StepsizeReport step = ode_stepsize_check(problem.rule, problem.alpha, tau, cvals);
        report.worst_step_bound = std::max(report.worst_step_bound, tau_alpha * step.norm);
        if (!step.ok) report.stepsize_warnings.push_back(k);

        try {
            LuFactors lu(b);
            lu.solve(rhs);
        } catch (const SingularMatrixError&) {
            char msg[96];
            std::snprintf(msg, sizeof(msg), "solve_fode: singular step matrix at interval k=%d", k);
            throw WellPosednessError(msg);
        }
        DenseMatrix vk(m, 1);
        for (int j = 0; j < m; ++j) vk(j, 0) = rhs[static_cast<std::size_t>(j)];
        std::vector<double> uk(1);
        local_value(sol.U[static_cast<std::size_t>(k - 1)], vk, 1.0, uk);
        sol.V.push_back(std::move(vk));
        sol.U[static_cast<std::size_t>(k)] = std::move(uk);
    }
    return report;
}

}  // namespace fraccol

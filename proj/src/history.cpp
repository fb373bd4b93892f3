#include "fraccol/history.hpp"

#include <algorithm>
#include <cmath>

#include "fraccol/errors.hpp"
#include "fraccol/specfun.hpp"

namespace fraccol {

namespace {

constexpr double kASwitch = 1.5;

void validate_weight_args(double A, double alpha) {
    if (!(A >= 1.0)) throw DomainError("history weights: A must be >= 1");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("history weights: alpha must lie in (0, 1]");
    if (A == 1.0 && alpha == 1.0)
        throw DomainError("history weights: the integral diverges for A = 1, alpha = 1");
}

double series_weight(int i, double A, double alpha) {
    // I_i = A^{-alpha} sum_{n>=0} (alpha)_n / (n! A^n (i+n+1)).
    double term_factor = 1.0;  // (alpha)_n / (n! A^n)
    double sum = 0.0;
    for (int n = 0; n < 100000; ++n) {
        const double term = term_factor / (i + n + 1);
        sum += term;
        if (term < 1e-15 * sum) return std::pow(A, -alpha) * sum;
        term_factor *= (alpha + n) / ((n + 1) * A);
    }
    throw ConvergenceError("history weights: series did not converge", i);
}

}  // namespace

HistoryWeightTable history_weights(int i_max, double A, double alpha) {
    if (i_max < 0) throw DomainError("history_weights: i_max must be >= 0");
    validate_weight_args(A, alpha);
    HistoryWeightTable table;
    table.alpha = alpha;
    table.A = A;
    table.values.resize(i_max + 1);
    if (A <= kASwitch) {
        const double edge = alpha == 1.0 ? 1.0 : std::pow(A - 1.0, 1.0 - alpha);
        table.values[0] = alpha == 1.0
                              ? std::log(A) - std::log(A - 1.0)
                              : (std::pow(A, 1.0 - alpha) - edge) / (1.0 - alpha);
        for (int i = 1; i <= i_max; ++i)
            table.values[i] = (i * A * table.values[i - 1] - edge) / (i + 1 - alpha);
    } else {
        for (int i = 0; i <= i_max; ++i) table.values[i] = series_weight(i, A, alpha);
    }
    return table;
}

namespace {

struct PanelIntegrand {
    int i;
    double A;
    double alpha;
    double operator()(double u) const { return std::pow(u, i) * std::pow(A - u, -alpha); }
};

double adaptive_panel(const PanelIntegrand& f, double a, double b, double fa, double fm, double fb,
                      double whole, double tol, int depth) {
    if (depth <= 0)
        throw ConvergenceError("history_weights_oracle: subdivision cap reached", 0);
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double sum = left + right;
    if (std::abs(sum - whole) <= 15.0 * tol) return sum + (sum - whole) / 15.0;
    return adaptive_panel(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_panel(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_panel(const PanelIntegrand& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_panel(f, a, b, fa, fm, fb, whole, tol, 50);
}

}  // namespace

double history_weights_oracle(int i, double A, double alpha, double tol) {
    if (i < 0) throw DomainError("history_weights_oracle: i must be >= 0");
    validate_weight_args(A, alpha);
    if (!(tol > 0.0)) throw DomainError("history_weights_oracle: tol must be positive");
    const PanelIntegrand f{i, A, alpha};
    double total = 0.0;
    double left = 0.0;
    for (int panel = 0; panel < 200; ++panel) {
        const double width = 1.0 - left;
        // Close the remaining integral over [left, 1] analytically once the
        // tail is short: u^i is bracketed by [left^i, 1] there, and the kernel
        // integral J = int_left^1 (A-u)^{-alpha} du has a closed form, so the
        // tail lies in [left^i * J, J]. Take the bracket midpoint when the
        // bracket width is within tolerance. (The kernel forms below use
        // log1p/expm1 to avoid cancellation when width << A-1.)
        if (width <= 1.0 / 64.0) {
            double kernel_integral;
            if (A == 1.0)
                kernel_integral = std::pow(width, 1.0 - alpha) / (1.0 - alpha);
            else if (alpha == 1.0)
                kernel_integral = std::log1p(width / (A - 1.0));
            else
                kernel_integral = std::pow(A - 1.0, 1.0 - alpha) *
                                  std::expm1((1.0 - alpha) * std::log1p(width / (A - 1.0))) /
                                  (1.0 - alpha);
            const double lo = std::pow(left, i);
            const double bracket = (1.0 - lo) * kernel_integral;
            // width <= 1e-15: the dyadic refinement is at the resolution limit
            // of double near u = 1; accept the midpoint with its ~i*width*J
            // error (<= ~1e-11 in the worst alpha -> 1 cases).
            if (bracket <= 2.0 * tol * std::max(total, 1.0) || width <= 1e-15)
                return total + 0.5 * (1.0 + lo) * kernel_integral;
        }
        const double right = left + 0.5 * width;
        total += integrate_panel(f, left, right, tol * std::max(total, 1.0) / 64.0);
        left = right;
    }
    throw ConvergenceError("history_weights_oracle: panel cap reached", i);
}

std::vector<double> caputo_history_term(const TemporalMesh& mesh,
                                        const std::vector<DenseMatrix>& blocks,
                                        const CollocationRule& rule, double alpha, int k,
                                        int ell) {
    if (k < 1 || k > mesh.M) throw DomainError("caputo_history_term: interval index out of range");
    if (ell < 0 || ell >= rule.m)
        throw DomainError("caputo_history_term: collocation index out of range");
    if (static_cast<int>(blocks.size()) < k - 1)
        throw DomainError("caputo_history_term: missing coefficient blocks");
    const int m = rule.m;
    const int n = blocks.empty() ? 0 : blocks.front().cols();
    std::vector<double> out(n, 0.0);
    if (k == 1 || alpha == 1.0) return out;
    const double t_kl = mesh.nodes[k - 1] + mesh.tau(k) * rule.theta[ell];
    const double pref = 1.0 / gamma_function(1.0 - alpha);
    for (int j = 1; j < k; ++j) {
        const DenseMatrix& v = blocks[j - 1];
        if (v.rows() != m || v.cols() != n)
            throw DomainError("caputo_history_term: coefficient block has wrong shape");
        const double tau_j = mesh.tau(j);
        const double A = (t_kl - mesh.nodes[j - 1]) / tau_j;
        const auto table = history_weights(m - 1, A, alpha);
        const double scale = pref * std::pow(tau_j, -alpha);
        for (int i = 1; i <= m; ++i) {
            const double w = scale * i * table.values[i - 1];
            for (int node = 0; node < n; ++node) out[node] += w * v(i - 1, node);
        }
    }
    return out;
}

}  // namespace fraccol

#include "fraccol/collocation.hpp"

#include <algorithm>
#include <cmath>

#include "fraccol/denselin.hpp"
#include "fraccol/errors.hpp"
#include "fraccol/specfun.hpp"
#include "gvdm_detail.hpp"

namespace fraccol {

namespace detail {

long double gvdm_longdouble(std::span<const double> theta, std::span<const double> beta) {
    const int m = static_cast<int>(theta.size());
    std::vector<long double> g(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        const long double lt = std::log(static_cast<long double>(theta[i]));
        for (int k = 0; k < m; ++k)
            g[i * m + k] =
                beta[k] == 0.0 ? 1.0L : std::exp(static_cast<long double>(beta[k]) * lt);
    }
    long double det = 1.0L;
    for (int k = 0; k < m; ++k) {
        long double cmax = 0.0L;
        for (int i = 0; i < m; ++i) cmax = std::max(cmax, std::abs(g[i * m + k]));
        if (cmax == 0.0L) return 0.0L;
        for (int i = 0; i < m; ++i) g[i * m + k] /= cmax;
        det *= cmax;
    }
    for (int k = 0; k < m; ++k) {
        int piv = k;
        for (int i = k + 1; i < m; ++i)
            if (std::abs(g[i * m + k]) > std::abs(g[piv * m + k])) piv = i;
        if (g[piv * m + k] == 0.0L) return 0.0L;
        if (piv != k) {
            for (int j = 0; j < m; ++j) std::swap(g[k * m + j], g[piv * m + j]);
            det = -det;
        }
        det *= g[k * m + k];
        for (int i = k + 1; i < m; ++i) {
            const long double f = g[i * m + k] / g[k * m + k];
            for (int j = k + 1; j < m; ++j) g[i * m + j] -= f * g[k * m + j];
        }
    }
    return det;
}

}  // namespace detail

PointFamily parse_point_family(std::string_view name) {
    if (name == "chebyshev") return PointFamily::chebyshev;
    if (name == "equidistant") return PointFamily::equidistant;
    if (name == "lobatto") return PointFamily::lobatto;
    throw DomainError("unknown point family: " + std::string(name));
}

std::string point_family_name(PointFamily family) {
    switch (family) {
        case PointFamily::chebyshev: return "chebyshev";
        case PointFamily::equidistant: return "equidistant";
        case PointFamily::lobatto: return "lobatto";
        case PointFamily::custom: return "custom";
    }
    throw DomainError("point_family_name: invalid tag");
}

namespace {

/// Legendre P_m and its first derivative at x (|x| < 1), by recurrence.
void legendre_and_derivative(int m, double x, double& p, double& dp) {
    double pm1 = 1.0, pm = x;
    for (int k = 1; k < m; ++k) {
        const double pnext = ((2 * k + 1) * x * pm - k * pm1) / (k + 1);
        pm1 = pm;
        pm = pnext;
    }
    p = pm;
    dp = m * (x * pm - pm1) / (x * x - 1.0);
}

/// Interior Gauss-Lobatto-Legendre nodes on (-1, 1): the m-1 roots of P'_m,
/// by Newton iteration from Chebyshev initial guesses.
std::vector<double> lobatto_interior(int m) {
    std::vector<double> roots;
    roots.reserve(m - 1);
    for (int k = 1; k < m; ++k) {
        double x = std::cos(M_PI * k / m);
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            double p, dp;
            legendre_and_derivative(m, x, p, dp);
            // Newton on f = P'_m with f' = P''_m from the Legendre ODE.
            const double ddp = (2.0 * x * dp - m * (m + 1.0) * p) / (1.0 - x * x);
            const double step = dp / ddp;
            x -= step;
            if (std::abs(step) <= 1e-14) {
                converged = true;
                break;
            }
        }
        if (!converged) throw ConvergenceError("lobatto nodes: Newton did not converge", k);
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

void validate_rule(const std::vector<double>& theta) {
    if (theta.empty()) throw DomainError("collocation rule: m must be >= 1");
    double prev = 0.0;
    for (double t : theta) {
        if (!(t > prev)) throw DomainError("collocation rule: points must be strictly increasing in (0, 1]");
        prev = t;
    }
    if (theta.back() != 1.0) throw DomainError("collocation rule: final point must be 1");
}

}  // namespace

CollocationRule make_points(PointFamily family, int m) {
    if (m < 1) throw DomainError("make_points: m must be >= 1");
    std::vector<double> theta(m);
    switch (family) {
        case PointFamily::chebyshev:
            for (int l = 1; l <= m; ++l) theta[l - 1] = (std::cos(M_PI * (m - l) / m) + 1.0) / 2.0;
            break;
        case PointFamily::equidistant:
            for (int l = 1; l <= m; ++l) theta[l - 1] = static_cast<double>(l) / m;
            break;
        case PointFamily::lobatto: {
            const auto interior = lobatto_interior(m);
            for (int i = 0; i < m - 1; ++i) theta[i] = (interior[i] + 1.0) / 2.0;
            break;
        }
        case PointFamily::custom:
            throw DomainError("make_points: custom rules require an explicit point set");
    }
    theta[m - 1] = 1.0;
    validate_rule(theta);
    return {m, std::move(theta), family};
}

CollocationRule make_custom_points(std::vector<double> theta) {
    if (theta.empty()) throw DomainError("custom points: need at least one point");
    if (std::abs(theta.back() - 1.0) > 1e-12)
        throw DomainError("custom points: final point must equal 1");
    theta.back() = 1.0;
    validate_rule(theta);
    const int m = static_cast<int>(theta.size());
    return {m, std::move(theta), PointFamily::custom};
}

CollocationMatrices build_matrices(const CollocationRule& rule, double alpha) {
    validate_rule(rule.theta);
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("build_matrices: alpha must lie in (0, 1]");
    const int m = rule.m;
    CollocationMatrices cm;
    cm.alpha = alpha;
    cm.W = DenseMatrix(m, m);
    cm.D1.resize(m);
    cm.D2.resize(m);
    for (int l = 0; l < m; ++l) {
        const double t = rule.theta[l];
        double p = 1.0;
        for (int j = 0; j < m; ++j) {
            p *= t;
            cm.W(l, j) = p;
        }
        cm.D1[l] = std::pow(t, -alpha);
    }
    for (int j = 0; j < m; ++j) cm.D2[j] = caputo_power_coefficient(j + 1, alpha);
    cm.M_alpha = DenseMatrix(m, m);
    for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j) cm.M_alpha(l, j) = cm.D1[l] * cm.W(l, j) * cm.D2[j];
    // M W = M_alpha  <=>  W^T M^T = M_alpha^T, solved column by column.
    cm.M = lu_solve(cm.W.transposed(), cm.M_alpha.transposed()).transposed();
    DenseMatrix resid = cm.M * cm.W;
    for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j) resid(l, j) -= cm.M_alpha(l, j);
    if (resid.max_abs() > 1e-10 * cm.M_alpha.max_abs())
        throw Error("build_matrices: residual of M*W = M_alpha exceeds tolerance");
    return cm;
}

double vandermonde_det(const CollocationRule& rule) {
    validate_rule(rule.theta);
    double det = 1.0;
    for (int j = 0; j < rule.m; ++j) {
        det *= rule.theta[j];
        for (int i = 0; i < j; ++i) det *= rule.theta[j] - rule.theta[i];
    }
    return det;
}

double generalized_vandermonde_det(std::span<const double> theta, std::span<const double> beta) {
    const int m = static_cast<int>(theta.size());
    if (m == 0 || beta.size() != theta.size())
        throw DomainError("generalized_vandermonde_det: need equally sized nonempty inputs");
    for (int i = 0; i < m; ++i) {
        if (!(theta[i] > (i ? theta[i - 1] : 0.0)))
            throw DomainError("generalized_vandermonde_det: theta must be positive and strictly increasing");
        if (!(beta[i] > (i ? beta[i - 1] : 0.0)))
            throw DomainError("generalized_vandermonde_det: beta must be positive and strictly increasing");
    }
    return static_cast<double>(detail::gvdm_longdouble(theta, beta));
}

}  // namespace fraccol

#include "fraccol/wellposed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "fraccol/denselin.hpp"
#include "fraccol/errors.hpp"
#include "fraccol/specfun.hpp"
#include "gvdm_detail.hpp"

namespace fraccol {

namespace {

bool is_real(const std::complex<double>& z, const SpectrumOptions& opt) {
    return std::abs(z.imag()) <= opt.imag_tol * std::max(1.0, std::abs(z));
}

}  // namespace

SpectrumReport spectrum(const CollocationRule& rule, double alpha, const SpectrumOptions& opt) {
    const CollocationMatrices cm = build_matrices(rule, alpha);
    SpectrumReport rep;
    rep.m = rule.m;
    rep.alpha = alpha;
    rep.family = rule.family;
    rep.eigenvalues = eigenvalues(cm.M);
    rep.min_real_part = rep.eigenvalues.front().real();
    for (const auto& z : rep.eigenvalues) {
        rep.min_real_part = std::min(rep.min_real_part, z.real());
        if (is_real(z, opt)) {
            ++rep.real_eigenvalue_count;
            if (z.real() < -opt.negative_tol) rep.has_real_negative = true;
        }
    }
    rep.all_real_parts_positive = rep.min_real_part > 0.0;
    return rep;
}

CharPolyReport charpoly_subsets(const CollocationRule& rule, double alpha) {
    if (rule.m > 16) throw DomainError("charpoly_subsets: m must be <= 16");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("charpoly_subsets: alpha must lie in (0, 1]");
    const int m = rule.m;
    std::vector<double> c(m + 1);
    for (int k = 1; k <= m; ++k) c[k] = caputo_power_coefficient(k, alpha);
    std::vector<long double> acc(m + 1, 0.0L);
    std::vector<double> beta(m);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        long double factor = 1.0L;
        bool degenerate = false;
        double prev = -1.0;
        for (int k = 1; k <= m; ++k) {
            double b;
            if (mask & (1u << (k - 1))) {
                b = k;
            } else {
                b = k - alpha;
                factor *= c[k];
            }
            // Exponents are non-decreasing by construction; a repeat (only
            // possible at alpha = 1) gives two equal columns, so the term is 0.
            if (b == prev) {
                degenerate = true;
                break;
            }
            beta[k - 1] = b;
            prev = b;
        }
        if (degenerate) continue;
        acc[std::popcount(mask)] += factor * detail::gvdm_longdouble(rule.theta, beta);
    }
    CharPolyReport rep;
    rep.coefficients.resize(m + 1);
    rep.all_positive = true;
    for (int j = 0; j <= m; ++j) {
        rep.coefficients[j] = static_cast<double>(acc[j]);
        if (!(rep.coefficients[j] > 0.0)) rep.all_positive = false;
    }
    const auto other = charpoly_leverrier(build_matrices(rule, alpha));
    for (int j = 0; j <= m; ++j) {
        const double rel = std::abs(rep.coefficients[j] - other[j]) / std::max(1.0, std::abs(other[j]));
        rep.cross_check_residual = std::max(rep.cross_check_residual, rel);
    }
    return rep;
}

std::vector<double> charpoly_leverrier(const CollocationMatrices& matrices) {
    const int m = matrices.W.rows();
    if (m > 20) throw DomainError("charpoly_leverrier: m must be <= 20");
    const size_t mm = static_cast<size_t>(m) * m;

    // Solve W A = M_alpha in long double (partially pivoted LU).
    std::vector<long double> w(mm), a(mm);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            w[i * m + j] = matrices.W(i, j);
            a[i * m + j] = matrices.M_alpha(i, j);
        }
    for (int k = 0; k < m; ++k) {
        int piv = k;
        for (int i = k + 1; i < m; ++i)
            if (std::abs(w[i * m + k]) > std::abs(w[piv * m + k])) piv = i;
        if (w[piv * m + k] == 0.0L)
            throw SingularMatrixError("charpoly_leverrier: singular W", k);
        if (piv != k)
            for (int j = 0; j < m; ++j) {
                std::swap(w[k * m + j], w[piv * m + j]);
                std::swap(a[k * m + j], a[piv * m + j]);
            }
        for (int i = k + 1; i < m; ++i) {
            const long double f = w[i * m + k] / w[k * m + k];
            for (int j = k + 1; j < m; ++j) w[i * m + j] -= f * w[k * m + j];
            for (int j = 0; j < m; ++j) a[i * m + j] -= f * a[k * m + j];
        }
    }
    for (int j = 0; j < m; ++j)
        for (int i = m - 1; i >= 0; --i) {
            long double s = a[i * m + j];
            for (int k = i + 1; k < m; ++k) s -= w[i * m + k] * a[k * m + j];
            a[i * m + j] = s / w[i * m + i];
        }

    // Faddeev-LeVerrier: det(lambda I - A) = sum_k b_k lambda^{m-k}, b_0 = 1.
    std::vector<long double> b(m + 1);
    b[0] = 1.0L;
    std::vector<long double> n_cur(a), n_next(mm);
    for (int k = 1; k <= m; ++k) {
        if (k > 1) {
            for (int i = 0; i < m; ++i) n_cur[i * m + i] += b[k - 1];
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    long double s = 0.0L;
                    for (int l = 0; l < m; ++l) s += a[i * m + l] * n_cur[l * m + j];
                    n_next[i * m + j] = s;
                }
            std::swap(n_cur, n_next);
        }
        long double tr = 0.0L;
        for (int i = 0; i < m; ++i) tr += n_cur[i * m + i];
        b[k] = -tr / k;
    }

    // det W in closed form; theta is recoverable as the first column of W.
    long double det_w = 1.0L;
    for (int j = 0; j < m; ++j) {
        det_w *= static_cast<long double>(matrices.W(j, 0));
        for (int i = 0; i < j; ++i)
            det_w *= static_cast<long double>(matrices.W(j, 0)) - static_cast<long double>(matrices.W(i, 0));
    }

    // det(M_alpha - lambda W) = det W * (-1)^m * det(lambda I - A).
    std::vector<double> coeff(m + 1);
    for (int j = 0; j <= m; ++j) {
        const long double s = ((m - j) % 2 == 0) ? 1.0L : -1.0L;
        coeff[j] = static_cast<double>(det_w * s * b[m - j]);
    }
    return coeff;
}

LaxMilgramReport lax_milgram_check(const CollocationRule& rule, double alpha,
                                   std::span<const double> D) {
    if (static_cast<int>(D.size()) != rule.m)
        throw DomainError("lax_milgram_check: D must have m entries");
    for (double d : D)
        if (!(d > 0.0)) throw DomainError("lax_milgram_check: D entries must be positive");
    const CollocationMatrices cm = build_matrices(rule, alpha);
    const int m = rule.m;
    const double c1 = cm.D2[0];
    DenseMatrix s(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double sum = 0.0;
            for (int l = 0; l < m; ++l) sum += cm.W(l, i) * D[l] * cm.W(l, j);
            s(i, j) = sum * (cm.D2[j] / c1);
        }
    const auto rep = symmetric_part_psd(s, 1e-12 * s.norm_inf());
    return {rep.psd, rep.min_eigenvalue};
}

std::optional<std::vector<double>> lax_milgram_D_m2(double theta1, double alpha) {
    if (!(theta1 > 0.0) || !(theta1 < 1.0))
        throw DomainError("lax_milgram_D_m2: theta1 must lie in (0, 1)");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("lax_milgram_D_m2: alpha must lie in (0, 1]");
    const double theta_star = 1.0 - 0.5 * alpha;
    if (theta1 > theta_star) return std::nullopt;
    return std::vector<double>{1.0, theta1 * theta1 * theta1};
}

StepsizeReport ode_stepsize_check(const CollocationRule& rule, double alpha, double tau,
                                  std::span<const double> c_values) {
    if (static_cast<int>(c_values.size()) != rule.m)
        throw DomainError("ode_stepsize_check: need one coefficient sample per point");
    if (!(tau > 0.0)) throw DomainError("ode_stepsize_check: tau must be positive");
    const CollocationMatrices cm = build_matrices(rule, alpha);
    const int m = rule.m;
    DenseMatrix target(m, m);
    for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j) target(l, j) = c_values[l] * cm.W(l, j);
    const DenseMatrix x = lu_solve(cm.M_alpha, target);
    const double norm = x.norm_inf();
    return {std::pow(tau, alpha) * norm < 1.0, norm};
}

ResolventEstimate estimate_resolvent_bound(const CollocationMatrices& matrices,
                                           double lambda_max, int samples) {
    const DenseMatrix& m = matrices.M;
    const int n = m.rows();
    if (samples < 2) throw DomainError("estimate_resolvent_bound: need at least 2 samples");
    const SpectrumOptions opt{};
    for (const auto& z : eigenvalues(m))
        if (is_real(z, opt) && z.real() < -opt.negative_tol)
            throw WellPosednessError("estimate_resolvent_bound: real negative eigenvalue present");
    const double mnorm = m.norm_inf();
    if (lambda_max <= 0.0) lambda_max = 1e6 * mnorm;
    const double lambda_lo = 1e-3 * mnorm;
    const DenseMatrix eye = DenseMatrix::identity(n);
    ResolventEstimate est;
    double tail = 0.0;
    for (int i = -1; i < samples; ++i) {
        const double lambda =
            i < 0 ? 0.0 : lambda_lo * std::pow(lambda_max / lambda_lo, double(i) / (samples - 1));
        DenseMatrix shifted = m;
        for (int d = 0; d < n; ++d) shifted(d, d) += lambda;
        double rnorm;
        try {
            rnorm = lu_solve(shifted, eye).norm_inf();
        } catch (const SingularMatrixError&) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "resolvent undefined at lambda=%.6e", lambda);
            throw WellPosednessError(buf);
        }
        est.C_M = std::max(est.C_M, rnorm);
        if (i == samples - 1) tail = lambda * rnorm;
    }
    est.tail_verified = tail >= 0.9 && tail <= 1.1;
    char buf[128];
    std::snprintf(buf, sizeof buf, "{0} plus %d log-spaced points in [%.6e, %.6e]", samples,
                  lambda_lo, lambda_max);
    est.lambda_grid = buf;
    return est;
}

}  // namespace fraccol

#include "fraccol/denselin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fraccol/errors.hpp"

namespace fraccol {

namespace {
constexpr double kPivotFloor = 1e-300;
}

LuFactors::LuFactors(DenseMatrix a) : lu_(std::move(a)), sign_(1) {
    if (lu_.rows() != lu_.cols()) throw DomainError("lu_factor: matrix must be square");
    const int n = lu_.rows();
    perm_.resize(n);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu_(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < kPivotFloor)
            throw SingularMatrixError("lu_factor: matrix is numerically singular", k);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            sign_ = -sign_;
        }
        perm_[k] = piv;
        const double dkk = lu_(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) / dkk;
            lu_(i, k) = f;
            for (int j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

void LuFactors::solve(std::span<double> b) const {
    const int n = lu_.rows();
    // Rows of the packed factor are fully swapped, so permute b first.
    for (int k = 0; k < n; ++k) std::swap(b[k], b[perm_[k]]);
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) b[i] -= lu_(i, k) * b[k];
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * b[j];
        b[i] = s / lu_(i, i);
    }
}

double LuFactors::determinant() const {
    double d = sign_;
    for (int i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
    return d;
}

DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) throw DomainError("lu_solve: dimension mismatch");
    const LuFactors f(a);
    const int n = b.rows(), k = b.cols();
    DenseMatrix x = b;
    std::vector<double> col(n);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < n; ++i) col[i] = x(i, j);
        f.solve(col);
        for (int i = 0; i < n; ++i) x(i, j) = col[i];
    }
    return x;
}

std::vector<double> lu_solve(const DenseMatrix& a, std::vector<double> b) {
    if (a.rows() != static_cast<int>(b.size())) throw DomainError("lu_solve: dimension mismatch");
    const LuFactors f(a);
    f.solve(b);
    return b;
}

double lu_det(const DenseMatrix& a) {
    try {
        return LuFactors(a).determinant();
    } catch (const SingularMatrixError&) {
        return 0.0;
    }
}

namespace {

/// Diagonal similarity scaling by powers of two (norm equalization).
void balance_inplace(DenseMatrix& a) {
    const int n = a.rows();
    const double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double ginv = 1.0 / f;
                for (int j = 0; j < n; ++j) a(i, j) *= ginv;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form (in place).
void hessenberg_inplace(DenseMatrix& a) {
    const int n = a.rows();
    std::vector<double> v(n);
    for (int k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == 0.0) continue;
        double sq = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            sq += v[i] * v[i];
        }
        double alpha = std::sqrt(sq);
        if (v[k + 1] > 0.0) alpha = -alpha;
        v[k + 1] -= alpha;
        const double beta = -alpha * v[k + 1];  // = |v|^2 / 2 after the update
        if (beta == 0.0) continue;
        // A <- P A with P = I - v v^T / beta (rows k+1..n-1)
        for (int j = k; j < n; ++j) {
            double s = 0.0;
            for (int i = k + 1; i < n; ++i) s += v[i] * a(i, j);
            s /= beta;
            for (int i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        // A <- A P (columns k+1..n-1)
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s /= beta;
            for (int j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
        }
        a(k + 1, k) = scale * alpha;
        for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

inline double sign_of(double magnitude, double carrier) {
    return carrier >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

/// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
void hqr_inplace(DenseMatrix& h, std::vector<double>& wr, std::vector<double>& wi) {
    const int n = h.rows();
    const double eps = std::numeric_limits<double>::epsilon();
    wr.assign(n, 0.0);
    wi.assign(n, 0.0);
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));
    int sweeps_left = 60 * n;
    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        for (;;) {
            int l;
            for (l = nn; l >= 1; --l) {
                double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(h(l, l - 1)) <= eps * s) {
                    h(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            double x = h(nn, nn);
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                --nn;
                break;
            }
            double y = h(nn - 1, nn - 1);
            double w = h(nn, nn - 1) * h(nn - 1, nn);
            if (l == nn - 1) {
                double p = 0.5 * (y - x);
                const double q = p * p + w;
                double z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) {
                    z = p + sign_of(z, p);
                    wr[nn - 1] = wr[nn] = x + z;
                    if (z != 0.0) wr[nn] = x - w / z;
                    wi[nn - 1] = wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = wr[nn] = x + p;
                    wi[nn] = z;
                    wi[nn - 1] = -z;
                }
                nn -= 2;
                break;
            }
            if (sweeps_left-- <= 0)
                throw ConvergenceError("eigenvalues: QR sweep cap exceeded", nn);
            if (its == 10 || its == 20) {
                t += x;
                for (int i = 0; i <= nn; ++i) h(i, i) -= x;
                const double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
                y = x = 0.75 * s;
                w = -0.4375 * s * s;
            }
            ++its;
            int m;
            double p = 0.0, q = 0.0, r = 0.0;
            for (m = nn - 2; m >= l; --m) {
                const double z = h(m, m);
                const double rr = x - z;
                const double ss = y - z;
                p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
                q = h(m + 1, m + 1) - z - rr - ss;
                r = h(m + 2, m + 1);
                const double sc = std::abs(p) + std::abs(q) + std::abs(r);
                p /= sc;
                q /= sc;
                r /= sc;
                if (m == l) break;
                const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
                const double v =
                    std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
                if (u <= eps * v) break;
            }
            for (int i = m + 2; i <= nn; ++i) {
                h(i, i - 2) = 0.0;
                if (i > m + 2) h(i, i - 3) = 0.0;
            }
            for (int k = m; k <= nn - 1; ++k) {
                const bool notlast = (k != nn - 1);
                if (k != m) {
                    p = h(k, k - 1);
                    q = h(k + 1, k - 1);
                    r = notlast ? h(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                if (s == 0.0) continue;
                if (k == m) {
                    if (l != m) h(k, k - 1) = -h(k, k - 1);
                } else {
                    h(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                const double z = r / s;
                q /= p;
                r /= p;
                for (int j = k; j <= nn; ++j) {
                    double pp = h(k, j) + q * h(k + 1, j);
                    if (notlast) {
                        pp += r * h(k + 2, j);
                        h(k + 2, j) -= pp * z;
                    }
                    h(k + 1, j) -= pp * y;
                    h(k, j) -= pp * x;
                }
                const int iupper = std::min(nn, k + 3);
                for (int i = l; i <= iupper; ++i) {
                    double pp = x * h(i, k) + y * h(i, k + 1);
                    if (notlast) {
                        pp += z * h(i, k + 2);
                        h(i, k + 2) -= pp * r;
                    }
                    h(i, k + 1) -= pp * q;
                    h(i, k) -= pp;
                }
            }
        }
    }
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw DomainError("eigenvalues: matrix must be square");
    const int n = a.rows();
    if (n < 1 || n > 64) throw DomainError("eigenvalues: order must lie in [1, 64]");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(a(i, j))) throw DomainError("eigenvalues: non-finite entry");
    DenseMatrix h = a;
    balance_inplace(h);
    hessenberg_inplace(h);
    std::vector<double> wr, wi;
    hqr_inplace(h, wr, wi);
    std::vector<std::complex<double>> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = {wr[i], wi[i]};
    std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return ev;
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& s) {
    if (s.rows() != s.cols()) throw DomainError("symmetric_eigenvalues: matrix must be square");
    const int n = s.rows();
    DenseMatrix a(n, n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!std::isfinite(s(i, j)))
                throw DomainError("symmetric_eigenvalues: non-finite entry");
            a(i, j) = 0.5 * (s(i, j) + s(j, i));
            scale = std::max(scale, std::abs(a(i, j)));
        }
    if (scale == 0.0) return std::vector<double>(n, 0.0);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (std::sqrt(off) <= 1e-15 * n * scale) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) <= 1e-18 * scale) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                double tval = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) tval = -tval;
                const double c = 1.0 / std::sqrt(tval * tval + 1.0);
                const double sn = tval * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - sn * aiq;
                    a(i, q) = sn * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const double apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - sn * aqj;
                    a(q, j) = sn * apj + c * aqj;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

SymmetricPsdReport symmetric_part_psd(const DenseMatrix& s, double tol) {
    const auto ev = symmetric_eigenvalues(s);
    return {ev.front() >= -tol, ev.front()};
}

}  // namespace fraccol

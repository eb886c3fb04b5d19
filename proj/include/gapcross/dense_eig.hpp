#pragma once

// Dense symmetric eigensolver: Householder reduction to tridiagonal followed
// by implicit-shift QL. Used as the independent oracle for the sparse
// counting and shift-invert paths; it shares no code with them.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gapcross {

namespace detail {

inline double sign2(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Householder tridiagonalization of the symmetric matrix stored row-major in
// z (n x n). On exit d holds the diagonal, e the subdiagonal (e[0] unused);
// when vecs is true z holds the accumulated orthogonal transform.
inline void tred2(std::vector<double>& z, int n, std::vector<double>& d, std::vector<double>& e,
                  bool vecs) {
    auto a = [&](int i, int j) -> double& { return z[static_cast<std::size_t>(i) * n + j]; };
    for (int i = n - 1; i >= 1; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    if (vecs) a(j, i) = a(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    if (vecs) d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        if (vecs) {
            int l = i - 1;
            if (d[i] != 0.0) {
                for (int j = 0; j <= l; ++j) {
                    double g = 0.0;
                    for (int k = 0; k <= l; ++k) g += a(i, k) * a(k, j);
                    for (int k = 0; k <= l; ++k) a(k, j) -= g * a(k, i);
                }
            }
            d[i] = a(i, i);
            a(i, i) = 1.0;
            for (int j = 0; j <= l; ++j) a(j, i) = a(i, j) = 0.0;
        } else {
            d[i] = a(i, i);
        }
    }
}

// Implicit-shift QL on the tridiagonal (d, e); eigenvalues returned in d
// ascending. When vecs is true the rotations are accumulated into z.
inline void tql2(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z, int n,
                 bool vecs) {
    auto zz = [&](int i, int j) -> double& { return z[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("tql2: too many iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign2(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (vecs) {
                        for (int k = 0; k < n; ++k) {
                            f = zz(k, i + 1);
                            zz(k, i + 1) = s * zz(k, i) + c * f;
                            zz(k, i) = c * zz(k, i) - s * f;
                        }
                    }
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    // insertion sort ascending, carrying vectors along
    for (int i = 1; i < n; ++i) {
        double key = d[i];
        std::vector<double> col;
        if (vecs) {
            col.resize(n);
            for (int k = 0; k < n; ++k) col[k] = zz(k, i);
        }
        int j = i - 1;
        while (j >= 0 && d[j] > key) {
            d[j + 1] = d[j];
            if (vecs)
                for (int k = 0; k < n; ++k) zz(k, j + 1) = zz(k, j);
            --j;
        }
        d[j + 1] = key;
        if (vecs)
            for (int k = 0; k < n; ++k) zz(k, j + 1) = col[k];
    }
}

} // namespace detail

struct DenseEigResult {
    std::vector<double> values;  // ascending
    std::vector<double> vectors; // column k at vectors[i*n + k]; empty unless requested
    int n = 0;

    int count_in(double lo, double hi) const {
        int c = 0;
        for (double v : values)
            if (v > lo && v < hi) ++c;
        return c;
    }
};

// Full spectrum of a dense symmetric matrix (row-major, n x n).
inline DenseEigResult dense_sym_eig(std::vector<double> a, int n, bool want_vectors = false) {
    DenseEigResult r;
    r.n = n;
    if (n == 0) return r;
    std::vector<double> d(n), e(n);
    detail::tred2(a, n, d, e, want_vectors);
    detail::tql2(d, e, a, n, want_vectors);
    r.values = std::move(d);
    if (want_vectors) r.vectors = std::move(a);
    return r;
}

} // namespace gapcross

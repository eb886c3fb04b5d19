#pragma once

// Symmetric eigensolvers built on the LDL^T machinery:
//   - count_in_interval: exact Sylvester inertia counts,
//   - SpectralSlicer::locate: certified bisection location of every
//     eigenvalue in a window,
//   - interior_eigs: shift-invert Lanczos with deflation, validated against
//     the inertia certificate.
//
// A global oracle-check hook can cross-check every interval count on small
// matrices against the independent dense solver; the acceptance suite turns
// it on.

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "gapcross/common.hpp"
#include "gapcross/dense_eig.hpp"
#include "gapcross/ldlt.hpp"
#include "gapcross/sparse.hpp"
#include "gapcross/tridiag.hpp"

namespace gapcross {

struct OracleCheck {
    bool enabled = false;
    int dim_cap = 2000;
    long long checked = 0;
    long long mismatches = 0;
};

inline OracleCheck& oracle_check() {
    static OracleCheck oc;
    return oc;
}

namespace detail {

inline std::vector<double> densify(const SparseSymd& A) {
    std::vector<double> m(static_cast<std::size_t>(A.n()) * A.n(), 0.0);
    for (int j = 0; j < A.n(); ++j)
        for (std::int64_t p = A.col_ptr()[j]; p < A.col_ptr()[j + 1]; ++p)
            m[static_cast<std::size_t>(A.row_idx()[p]) * A.n() + j] = A.values()[p];
    return m;
}

// Real 2n x 2n embedding of a complex Hermitian matrix: [[Re, -Im], [Im, Re]].
// Every eigenvalue appears twice.
inline std::vector<double> densify_embedded(const SparseHermz& A) {
    const int n = A.n();
    const int N = 2 * n;
    std::vector<double> m(static_cast<std::size_t>(N) * N, 0.0);
    for (int j = 0; j < n; ++j)
        for (std::int64_t p = A.col_ptr()[j]; p < A.col_ptr()[j + 1]; ++p) {
            int i = A.row_idx()[p];
            double re = A.values()[p].real(), im = A.values()[p].imag();
            m[static_cast<std::size_t>(i) * N + j] = re;
            m[static_cast<std::size_t>(i + n) * N + j + n] = re;
            m[static_cast<std::size_t>(i) * N + j + n] = -im;
            m[static_cast<std::size_t>(i + n) * N + j] = im;
        }
    return m;
}

inline DenseEigResult dense_oracle_spectrum(const SparseSymd& A) {
    return dense_sym_eig(densify(A), A.n());
}
inline DenseEigResult dense_oracle_spectrum(const SparseHermz& A) {
    DenseEigResult r = dense_sym_eig(densify_embedded(A), 2 * A.n());
    // de-duplicate the doubled spectrum
    std::vector<double> vals;
    for (std::size_t k = 0; k + 1 < r.values.size(); k += 2) vals.push_back(0.5 * (r.values[k] + r.values[k + 1]));
    r.values = std::move(vals);
    r.n = A.n();
    return r;
}

// Solve (T - theta I) x = b for tridiagonal T with partial pivoting.
inline void tridiag_shifted_solve(const std::vector<double>& d, const std::vector<double>& e,
                                  double theta, std::vector<double>& x) {
    const int n = static_cast<int>(d.size());
    std::vector<double> dl(n, 0.0), dd(n), du(n, 0.0), du2(n, 0.0);
    for (int i = 0; i < n; ++i) dd[i] = d[i] - theta;
    for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = e[i];
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(dd[i]) >= std::abs(dl[i])) {
            double piv = dd[i];
            if (piv == 0.0) piv = 1e-300;
            double m = dl[i] / piv;
            dd[i + 1] -= m * du[i];
            x[i + 1] -= m * x[i];
            dl[i] = 0.0;
        } else {
            double m = dd[i] / dl[i];
            double t1 = du[i], t2 = (i + 2 < n) ? du[i + 1] : 0.0;
            dd[i] = dl[i];
            du[i] = dd[i + 1];
            du2[i] = (i + 2 < n) ? e[i + 1] : 0.0;
            dd[i + 1] = t1 - m * dd[i + 1];
            if (i + 2 < n) {
                du[i + 1] = t2 - m * du2[i];
                // du2 row i already set
            }
            std::swap(x[i], x[i + 1]);
            x[i + 1] -= m * x[i];
            dl[i] = m;
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        if (i + 1 < n) s -= du[i] * x[i + 1];
        if (i + 2 < n) s -= du2[i] * x[i + 2];
        double piv = dd[i];
        if (piv == 0.0) piv = 1e-300;
        x[i] = s / piv;
    }
}

// Eigenvector of tridiagonal (d,e) at Ritz value theta by inverse iteration.
inline std::vector<double> tridiag_ritz_vector(const std::vector<double>& d,
                                               const std::vector<double>& e, double theta) {
    const int n = static_cast<int>(d.size());
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int pass = 0; pass < 3; ++pass) {
        tridiag_shifted_solve(d, e, theta, x);
        double nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) break;
        for (double& v : x) v /= nrm;
    }
    return x;
}

} // namespace detail

template <class T> class SpectralSlicer {
  public:
    explicit SpectralSlicer(const SparseSym<T>& A)
        : A_(&A), fact_(A), scale_(std::max(1.0, A.inf_norm())) {}

    double pivot_tol() const { return scale_ * 1e-13; }

    // Number of eigenvalues strictly below x. The shift actually used is
    // returned through used if given (it differs from x only after
    // breakdown-perturbation retries).
    int count_below(double x, double* used = nullptr) {
        double shift = x;
        for (int attempt = 0;; ++attempt) {
            if (fact_.refactor(shift, pivot_tol()) == FactorStatus::ok) {
                if (used) *used = shift;
                return fact_.negative_pivots();
            }
            if (attempt >= 5)
                throw contract_error("ldlt: factorization breakdown persists after 5 shift perturbations");
            shift += 10.0 * std::max(pivot_tol(), fact_.breakdown_threshold());
        }
    }

    // Exact count in the open interval (w.lo, w.hi), with the dense-oracle
    // cross-check when the hook is on.
    int count_in(Interval w) {
        int c = count_below(w.hi) - count_below(w.lo);
        OracleCheck& oc = oracle_check();
        if (oc.enabled && A_->n() > 0 && A_->n() <= oc.dim_cap) {
            if (!dense_) dense_ = detail::dense_oracle_spectrum(*A_);
            oc.checked++;
            if (dense_->count_in(w.lo, w.hi) != c) oc.mismatches++;
        }
        return c;
    }

    // Locate every eigenvalue in (w.lo, w.hi) to absolute tolerance tol by
    // certified bisection; clusters come out as repeated values.
    std::vector<double> locate(Interval w, double tol) {
        std::vector<double> out;
        int clo = count_below(w.lo), chi = count_below(w.hi);
        locate_rec(w.lo, w.hi, clo, chi, tol, out);
        if (static_cast<int>(out.size()) != chi - clo)
            throw contract_error("locate: emitted values disagree with the inertia certificate");
        return out;
    }

    SymFactorizer<T>& factorizer() { return fact_; }
    const SparseSym<T>& matrix() const { return *A_; }
    double scale() const { return scale_; }

  private:
    void locate_rec(double lo, double hi, int clo, int chi, double tol, std::vector<double>& out) {
        int m = chi - clo;
        if (m <= 0) return;
        if (hi - lo <= tol) {
            for (int k = 0; k < m; ++k) out.push_back(0.5 * (lo + hi));
            return;
        }
        double mid = 0.5 * (lo + hi), used = mid;
        int cm = count_below(mid, &used);
        if (!(used > lo && used < hi)) {
            // the perturbed shift escaped the bracket: a cluster sits here
            for (int k = 0; k < m; ++k) out.push_back(0.5 * (lo + hi));
            return;
        }
        locate_rec(lo, used, clo, cm, tol, out);
        locate_rec(used, hi, cm, chi, tol, out);
    }

    const SparseSym<T>* A_;
    SymFactorizer<T> fact_;
    double scale_;
    std::optional<DenseEigResult> dense_;
};

template <class T> int count_in_interval(const SparseSym<T>& A, Interval w) {
    SpectralSlicer<T> s(A);
    return s.count_in(w);
}

struct EigenRequest {
    Interval window;
    double tol = 1e-8;
    bool want_vectors = false;
    std::uint64_t seed = default_seed();
};

template <class T> struct EigenResult {
    std::vector<double> values; // ascending; clusters repeated
    std::vector<std::vector<T>> vectors;
    std::vector<double> residuals; // per vector, ||A v - lambda v||
    int certificate = 0;           // inertia count of the window
    bool complete = false;
    std::uint64_t seed = 0;
    std::vector<std::pair<int, double>> history; // (iteration, best ritz residual)
};

namespace detail {

template <class T> T random_entry(std::mt19937_64& rng);
template <> inline double random_entry<double>(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}
template <> inline std::complex<double> random_entry<std::complex<double>>(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double re = u(rng), im = u(rng);
    return {re, im};
}

template <class T> double vec_norm(const std::vector<T>& v) {
    double s = 0.0;
    for (const T& x : v) s += scalar_traits<T>::real(x * scalar_traits<T>::conj(x));
    return std::sqrt(s);
}

template <class T> T vec_dot(const std::vector<T>& a, const std::vector<T>& b) {
    T s = T(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += scalar_traits<T>::conj(a[i]) * b[i];
    return s;
}

template <class T>
void orthogonalize(std::vector<T>& w, const std::vector<std::vector<T>>& basis) {
    for (const auto& q : basis) {
        T c = vec_dot(q, w);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
    }
}

template <class T>
double explicit_residual(const SparseSym<T>& A, const std::vector<T>& x, double lambda) {
    std::vector<T> y = A.matvec(x);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        T r = y[i] - T(lambda) * x[i];
        s += scalar_traits<T>::real(r * scalar_traits<T>::conj(r));
    }
    return std::sqrt(s);
}

} // namespace detail

// All eigenpairs of A inside req.window via shift-invert Lanczos at the
// window midpoint, deflating converged pairs and restarting; completeness is
// checked against the inertia certificate, with window bisection on
// stagnation. Results are deterministic for a fixed seed.
template <class T>
EigenResult<T> interior_eigs(const SparseSym<T>& A, const EigenRequest& req) {
    EigenResult<T> res;
    res.seed = req.seed;
    SpectralSlicer<T> slicer(A);
    res.certificate = slicer.count_in(req.window);
    if (res.certificate == 0) {
        res.complete = true;
        return res;
    }
    std::mt19937_64 rng(req.seed);
    const int n = A.n();

    struct Pair {
        double value;
        std::vector<T> vec;
        double resid;
    };
    std::vector<Pair> found;

    auto deflate = [&](std::vector<T>& x) {
        for (const auto& p : found) {
            T c = detail::vec_dot(p.vec, x);
            for (int i = 0; i < n; ++i) x[i] -= c * p.vec[i];
        }
    };

    // Runs restarted shift-invert Lanczos on one window; returns how many new
    // pairs converged there.
    auto lanczos_window = [&](Interval w, int expect) -> int {
        int got0 = static_cast<int>(found.size());
        double sigma = w.mid();
        SymFactorizer<T>& F = slicer.factorizer();
        for (int attempt = 0;; ++attempt) {
            if (F.refactor(sigma, slicer.pivot_tol()) == FactorStatus::ok) break;
            if (attempt >= 5) return 0;
            sigma += 10.0 * slicer.pivot_tol();
        }
        const int restarts = expect + 3;
        for (int r = 0; r < restarts && static_cast<int>(found.size()) - got0 < expect; ++r) {
            std::vector<std::vector<T>> basis;
            std::vector<double> alpha, beta;
            std::vector<T> v(n);
            for (auto& x : v) x = detail::random_entry<T>(rng);
            deflate(v);
            double nv = detail::vec_norm(v);
            if (nv == 0.0) continue;
            for (auto& x : v) x /= T(nv);
            basis.push_back(std::move(v));
            const int maxit = std::min(n, std::max(2 * expect + 30, 60));
            bool progressed = false;
            for (int j = 0; j < maxit && !progressed; ++j) {
                std::vector<T> w2 = F.solve(basis[j]);
                deflate(w2);
                double aj = scalar_traits<T>::real(detail::vec_dot(basis[j], w2));
                alpha.push_back(aj);
                for (int i = 0; i < n; ++i) w2[i] -= T(aj) * basis[j][i];
                if (j > 0)
                    for (int i = 0; i < n; ++i) w2[i] -= T(beta[j - 1]) * basis[j - 1][i];
                detail::orthogonalize(w2, basis); // full reorthogonalization
                deflate(w2);
                double bj = detail::vec_norm(w2);
                beta.push_back(bj);

                // Ritz extraction on the current tridiagonal.
                std::vector<double> e(beta.begin(), beta.end() - 1);
                Interval hull{-1e300, 1e300};
                TridiagWindowResult tr =
                    tridiag_bisection(alpha, e, hull, 1e-13 * std::max(1.0, slicer.scale()));
                double best = 1e300;
                for (double theta : tr.values) {
                    if (theta == 0.0) continue;
                    double lam = sigma + 1.0 / theta;
                    if (!(lam > req.window.lo && lam < req.window.hi)) continue;
                    std::vector<double> y = detail::tridiag_ritz_vector(alpha, e, theta);
                    double ritz_res = std::abs(bj * y.back());
                    best = std::min(best, ritz_res / std::max(std::abs(theta), 1e-30));
                    if (ritz_res > 0.02 * std::abs(theta)) continue;
                    std::vector<T> x(n, T(0));
                    for (std::size_t c = 0; c < alpha.size(); ++c)
                        for (int i = 0; i < n; ++i) x[i] += T(y[c]) * basis[c][i];
                    deflate(x);
                    double nx = detail::vec_norm(x);
                    if (nx < 1e-8) continue;
                    for (auto& xv : x) xv /= T(nx);
                    std::vector<T> Ax = A.matvec(x);
                    double rq = scalar_traits<T>::real(detail::vec_dot(x, Ax));
                    double rr = 0.0;
                    for (int i = 0; i < n; ++i) {
                        T rv = Ax[i] - T(rq) * x[i];
                        rr += scalar_traits<T>::real(rv * scalar_traits<T>::conj(rv));
                    }
                    rr = std::sqrt(rr);
                    if (rr <= req.tol && rq > req.window.lo && rq < req.window.hi) {
                        found.push_back({rq, std::move(x), rr});
                        progressed = true; // restart with this pair deflated
                    }
                }
                res.history.emplace_back(j, best);
                if (bj <= 1e-13 * std::max(1.0, slicer.scale())) break; // invariant subspace
                if (!progressed) {
                    std::vector<T> vn = std::move(w2);
                    for (auto& xv : vn) xv /= T(bj);
                    basis.push_back(std::move(vn));
                }
            }
        }
        return static_cast<int>(found.size()) - got0;
    };

    // recursive window handler
    auto handle = [&](auto&& self, Interval w, int expect, int depth) -> void {
        if (expect <= 0) return;
        if (w.width() <= 10.0 * req.tol) {
            // unresolved cluster: locate once and emit with multiplicity
            std::vector<double> vals = slicer.locate(w, req.tol);
            for (double v : vals) {
                bool have = false;
                for (const auto& p : found)
                    if (std::abs(p.value - v) <= 10.0 * req.tol) have = true;
                if (!have) found.push_back({v, {}, -1.0});
            }
            return;
        }
        int got = lanczos_window(w, expect);
        if (got >= expect) return;
        if (depth > 40) return;
        double mid = w.mid();
        // recount remaining in halves (found pairs subtracted by value)
        auto remaining_in = [&](Interval ww) {
            int c = slicer.count_in(ww);
            for (const auto& p : found)
                if (ww.contains(p.value)) --c;
            return c;
        };
        self(self, {w.lo, mid}, remaining_in({w.lo, mid}), depth + 1);
        self(self, {mid, w.hi}, remaining_in({mid, w.hi}), depth + 1);
    };
    handle(handle, req.window, res.certificate, 0);

    std::sort(found.begin(), found.end(), [](const Pair& a, const Pair& b) { return a.value < b.value; });
    for (auto& p : found) {
        res.values.push_back(p.value);
        if (req.want_vectors && !p.vec.empty()) {
            res.vectors.push_back(std::move(p.vec));
            res.residuals.push_back(p.resid);
        }
    }
    res.complete = (static_cast<int>(res.values.size()) == res.certificate);
    return res;
}

// Group sorted values into clusters with gaps below cluster_tol.
inline std::vector<std::pair<double, int>> cluster_values(const std::vector<double>& vals,
                                                          double cluster_tol) {
    std::vector<std::pair<double, int>> out;
    for (double v : vals) {
        if (!out.empty() && v - out.back().first <= cluster_tol * out.back().second)
            out.back() = {(out.back().first * out.back().second + v) / (out.back().second + 1),
                          out.back().second + 1};
        else
            out.emplace_back(v, 1);
    }
    return out;
}

} // namespace gapcross

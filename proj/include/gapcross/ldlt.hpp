#pragma once

// Sparse LDL^T (real symmetric) / LDL^H (complex Hermitian) factorization,
// up-looking with an elimination-tree symbolic pass. No pivoting: a small
// pivot is reported as a breakdown and the caller perturbs its shift. The
// diagonal D is real either way, so Sylvester inertia counts come straight
// from the signs of D.
//
// The symbolic structure depends only on the sparsity pattern, so one
// SymFactorizer serves every shift of the same matrix; refactor(shift) redoes
// only the numeric pass. This is what spectrum slicing leans on.

#include <cmath>
#include <cstdint>
#include <vector>

#include "gapcross/ordering.hpp"
#include "gapcross/sparse.hpp"

namespace gapcross {

enum class FactorStatus { none, ok, breakdown };

template <class T> class SymFactorizer {
  public:
    explicit SymFactorizer(const SparseSym<T>& A)
        : n_(A.n()), perm_(fill_reducing_order(A)) {
        build_permuted_upper(A);
        symbolic();
    }

    SymFactorizer(const SparseSym<T>& A, std::vector<int> perm) : n_(A.n()), perm_(std::move(perm)) {
        build_permuted_upper(A);
        symbolic();
    }

    // Numeric factorization of A - shift I. Besides the absolute pivot
    // threshold, a pivot that is negligible against the magnitude of the
    // terms that formed it is reported as a breakdown: its sign would be
    // rounding noise and would poison the inertia count (this happens when
    // the shift sits next to a degenerate eigenvalue).
    FactorStatus refactor(double shift, double pivot_tol) {
        std::vector<T>& y = work_y_;
        y.assign(n_, T(0));
        std::vector<int>& pattern = work_pattern_;
        pattern.assign(n_, 0);
        std::vector<int>& flag = work_flag_;
        flag.assign(n_, -1);
        std::vector<std::int64_t>& lfill = work_fill_;
        lfill.assign(n_, 0);
        d_.assign(n_, 0.0);
        status_ = FactorStatus::breakdown;
        breakdown_threshold_ = pivot_tol;
        constexpr double eps = 2.2e-16;
        for (int k = 0; k < n_; ++k) {
            int top = n_;
            flag[k] = k;
            for (std::int64_t p = ap_[k]; p < ap_[k + 1]; ++p) {
                int i = ai_[p];
                if (i > k) continue;
                y[i] += (i == k) ? ax_[p] - T(shift) : ax_[p];
                int len = 0;
                while (flag[i] != k) {
                    pattern[len++] = i;
                    flag[i] = k;
                    i = parent_[i];
                }
                while (len > 0) pattern[--top] = pattern[--len];
            }
            double dk = scalar_traits<T>::real(y[k]);
            double mag = std::abs(dk);
            y[k] = T(0);
            for (int s = top; s < n_; ++s) {
                int i = pattern[s];
                T yi = y[i];
                y[i] = T(0);
                std::int64_t p2 = lp_[i] + lfill[i];
                for (std::int64_t p = lp_[i]; p < p2; ++p) y[li_[p]] -= lx_[p] * yi;
                double abs2 = scalar_traits<T>::real(yi * scalar_traits<T>::conj(yi));
                double upd = abs2 / d_[i];
                dk -= upd;
                mag += std::abs(upd);
                li_[p2] = k;
                lx_[p2] = scalar_traits<T>::conj(yi) / T(d_[i]);
                lfill[i]++;
            }
            d_[k] = dk;
            const int len = n_ - top;
            const double cancel_tol = 32.0 * (len + 2) * eps * mag;
            if (std::abs(dk) <= pivot_tol || std::abs(dk) <= cancel_tol) {
                breakdown_at_ = k;
                breakdown_threshold_ = std::max(pivot_tol, cancel_tol);
                return status_;
            }
        }
        status_ = FactorStatus::ok;
        return status_;
    }

    FactorStatus status() const { return status_; }
    int breakdown_at() const { return breakdown_at_; }
    double breakdown_threshold() const { return breakdown_threshold_; }
    int n() const { return n_; }
    std::int64_t factor_nnz() const { return lp_[n_]; }

    int negative_pivots() const {
        int c = 0;
        for (int k = 0; k < n_; ++k)
            if (d_[k] < 0.0) ++c;
        return c;
    }

    // x := (A - shift I)^{-1} b using the current factors.
    std::vector<T> solve(const std::vector<T>& b) const {
        std::vector<T> y(n_);
        for (int k = 0; k < n_; ++k) y[k] = b[perm_[k]];
        for (int j = 0; j < n_; ++j) {
            T xj = y[j];
            if (xj != T(0))
                for (std::int64_t p = lp_[j]; p < lp_[j + 1]; ++p) y[li_[p]] -= lx_[p] * xj;
        }
        for (int j = 0; j < n_; ++j) y[j] /= T(d_[j]);
        for (int j = n_ - 1; j >= 0; --j) {
            T acc = y[j];
            for (std::int64_t p = lp_[j]; p < lp_[j + 1]; ++p)
                acc -= scalar_traits<T>::conj(lx_[p]) * y[li_[p]];
            y[j] = acc;
        }
        std::vector<T> x(n_);
        for (int k = 0; k < n_; ++k) x[perm_[k]] = y[k];
        return x;
    }

  private:
    void build_permuted_upper(const SparseSym<T>& A) {
        std::vector<int> inv(n_);
        for (int k = 0; k < n_; ++k) inv[perm_[k]] = k;
        ap_.assign(n_ + 1, 0);
        const auto& cp = A.col_ptr();
        const auto& ri = A.row_idx();
        const auto& vx = A.values();
        for (int j = 0; j < n_; ++j) {
            int nj = inv[j];
            for (std::int64_t p = cp[j]; p < cp[j + 1]; ++p) {
                int ni = inv[ri[p]];
                if (ni <= nj) ap_[nj + 1]++;
            }
        }
        for (int j = 0; j < n_; ++j) ap_[j + 1] += ap_[j];
        ai_.resize(ap_[n_]);
        ax_.resize(ap_[n_]);
        std::vector<std::int64_t> next(ap_.begin(), ap_.end() - 1);
        for (int j = 0; j < n_; ++j) {
            int nj = inv[j];
            for (std::int64_t p = cp[j]; p < cp[j + 1]; ++p) {
                int ni = inv[ri[p]];
                if (ni <= nj) {
                    std::int64_t q = next[nj]++;
                    ai_[q] = ni;
                    ax_[q] = vx[p];
                }
            }
        }
    }

    void symbolic() {
        parent_.assign(n_, -1);
        std::vector<int> flag(n_);
        std::vector<std::int64_t> lnz(n_, 0);
        for (int k = 0; k < n_; ++k) {
            flag[k] = k;
            for (std::int64_t p = ap_[k]; p < ap_[k + 1]; ++p) {
                int i = ai_[p];
                while (i < k && flag[i] != k) {
                    if (parent_[i] == -1) parent_[i] = k;
                    lnz[i]++;
                    flag[i] = k;
                    i = parent_[i];
                }
            }
        }
        lp_.assign(n_ + 1, 0);
        for (int k = 0; k < n_; ++k) lp_[k + 1] = lp_[k] + lnz[k];
        li_.resize(lp_[n_]);
        lx_.resize(lp_[n_]);
    }

    int n_;
    std::vector<int> perm_;
    FactorStatus status_ = FactorStatus::none;
    int breakdown_at_ = -1;
    double breakdown_threshold_ = 0.0;

    std::vector<std::int64_t> ap_;
    std::vector<int> ai_;
    std::vector<T> ax_;

    std::vector<int> parent_;
    std::vector<std::int64_t> lp_;
    std::vector<int> li_;
    std::vector<T> lx_;
    std::vector<double> d_;

    std::vector<T> work_y_;
    std::vector<int> work_pattern_, work_flag_;
    std::vector<std::int64_t> work_fill_;
};

} // namespace gapcross

#pragma once

// Sparse symmetric / Hermitian matrix storage (CSC, both triangles stored)
// plus the grid metadata the fill-reducing ordering wants to see.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "gapcross/common.hpp"

namespace gapcross {

template <class T> struct scalar_traits {
    static double real(T x) { return x; }
    static T conj(T x) { return x; }
    static double abs(T x) { return std::abs(x); }
};
template <class R> struct scalar_traits<std::complex<R>> {
    static double real(std::complex<R> x) { return x.real(); }
    static std::complex<R> conj(std::complex<R> x) { return std::conj(x); }
    static double abs(std::complex<R> x) { return std::abs(x); }
};

// Integer grid coordinates per unknown; lets the ordering cut along grid
// lines, and records which directions wrap periodically.
struct GridHint {
    std::vector<int> gx, gy;
    bool periodic_x = false;
    bool periodic_y = false;
    bool empty() const { return gx.empty(); }
};

template <class T> class SparseSym {
  public:
    SparseSym() = default;

    // Build a symmetric matrix from an upper-triangle entry list (i <= j).
    // Entries are mirrored; duplicates are summed.
    static SparseSym from_upper_triplets(int n, std::vector<std::tuple<int, int, T>> entries) {
        std::vector<std::tuple<int, int, T>> full;
        full.reserve(2 * entries.size());
        for (auto& [i, j, v] : entries) {
            full.emplace_back(i, j, v);
            if (i != j) full.emplace_back(j, i, scalar_traits<T>::conj(v));
        }
        return from_triplets(n, std::move(full));
    }

    static SparseSym from_triplets(int n, std::vector<std::tuple<int, int, T>> entries) {
        SparseSym A;
        A.n_ = n;
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
            return std::get<0>(a) < std::get<0>(b);
        });
        A.col_ptr_.assign(n + 1, 0);
        A.row_idx_.reserve(entries.size());
        A.values_.reserve(entries.size());
        for (std::size_t k = 0; k < entries.size();) {
            auto [i, j, v] = entries[k];
            std::size_t k2 = k + 1;
            while (k2 < entries.size() && std::get<0>(entries[k2]) == i && std::get<1>(entries[k2]) == j) {
                v += std::get<2>(entries[k2]);
                ++k2;
            }
            A.row_idx_.push_back(i);
            A.values_.push_back(v);
            A.col_ptr_[j + 1]++;
            k = k2;
        }
        for (int j = 0; j < n; ++j) A.col_ptr_[j + 1] += A.col_ptr_[j];
        return A;
    }

    int n() const { return n_; }
    std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }

    const std::vector<std::int64_t>& col_ptr() const { return col_ptr_; }
    const std::vector<int>& row_idx() const { return row_idx_; }
    const std::vector<T>& values() const { return values_; }

    GridHint grid_hint; // optional; empty when the matrix has no grid structure

    void matvec(const T* x, T* y) const {
        for (int i = 0; i < n_; ++i) y[i] = T(0);
        for (int j = 0; j < n_; ++j)
            for (std::int64_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) y[row_idx_[p]] += values_[p] * x[j];
    }

    std::vector<T> matvec(const std::vector<T>& x) const {
        std::vector<T> y(n_);
        matvec(x.data(), y.data());
        return y;
    }

    T diag(int i) const {
        for (std::int64_t p = col_ptr_[i]; p < col_ptr_[i + 1]; ++p)
            if (row_idx_[p] == i) return values_[p];
        return T(0);
    }

    // Max row sum of absolute values; upper bound on the spectral radius.
    double inf_norm() const {
        std::vector<double> rs(n_, 0.0);
        for (int j = 0; j < n_; ++j)
            for (std::int64_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p)
                rs[row_idx_[p]] += scalar_traits<T>::abs(values_[p]);
        return rs.empty() ? 0.0 : *std::max_element(rs.begin(), rs.end());
    }

    Interval gershgorin_hull() const {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        std::vector<double> rad(n_, 0.0);
        std::vector<double> dia(n_, 0.0);
        for (int j = 0; j < n_; ++j)
            for (std::int64_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
                if (row_idx_[p] == j)
                    dia[j] = scalar_traits<T>::real(values_[p]);
                else
                    rad[j] += scalar_traits<T>::abs(values_[p]);
            }
        for (int j = 0; j < n_; ++j) {
            lo = std::min(lo, dia[j] - rad[j]);
            hi = std::max(hi, dia[j] + rad[j]);
        }
        return {lo, hi};
    }

    bool structurally_symmetric() const {
        std::vector<std::tuple<int, int>> a, b;
        a.reserve(values_.size());
        b.reserve(values_.size());
        for (int j = 0; j < n_; ++j)
            for (std::int64_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
                a.emplace_back(row_idx_[p], j);
                b.emplace_back(j, row_idx_[p]);
            }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

  private:
    int n_ = 0;
    std::vector<std::int64_t> col_ptr_;
    std::vector<int> row_idx_;
    std::vector<T> values_;
};

using SparseSymd = SparseSym<double>;
using SparseHermz = SparseSym<std::complex<double>>;

// Matrix Market coordinate output (symmetric: lower triangle only).
inline void write_matrix_market(const SparseSymd& A, std::FILE* f) {
    std::int64_t nnz_lower = 0;
    for (int j = 0; j < A.n(); ++j)
        for (std::int64_t p = A.col_ptr()[j]; p < A.col_ptr()[j + 1]; ++p)
            if (A.row_idx()[p] >= j) ++nnz_lower;
    std::fprintf(f, "%%%%MatrixMarket matrix coordinate real symmetric\n");
    std::fprintf(f, "%d %d %lld\n", A.n(), A.n(), static_cast<long long>(nnz_lower));
    for (int j = 0; j < A.n(); ++j)
        for (std::int64_t p = A.col_ptr()[j]; p < A.col_ptr()[j + 1]; ++p)
            if (A.row_idx()[p] >= j)
                std::fprintf(f, "%d %d %.17g\n", A.row_idx()[p] + 1, j + 1, A.values()[p]);
}

} // namespace gapcross

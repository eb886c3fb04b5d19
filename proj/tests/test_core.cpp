#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "gapcross/dense_eig.hpp"
#include "gapcross/eigensolve.hpp"
#include "gapcross/ldlt.hpp"
#include "gapcross/ordering.hpp"
#include "gapcross/sparse.hpp"
#include "gapcross/tridiag.hpp"

using namespace gapcross;

namespace {

SparseSymd laplacian_2d(int nx, int ny, bool periodic) {
    std::vector<std::tuple<int, int, double>> trip;
    auto id = [&](int i, int j) { return i * ny + j; };
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            trip.emplace_back(id(i, j), id(i, j), 4.0);
            int ir = periodic ? (i + 1) % nx : i + 1;
            int ju = periodic ? (j + 1) % ny : j + 1;
            if (ir < nx) {
                int a = id(i, j), b = id(ir, j);
                trip.emplace_back(std::min(a, b), std::max(a, b), -1.0);
            }
            if (ju < ny) {
                int a = id(i, j), b = id(i, ju);
                trip.emplace_back(std::min(a, b), std::max(a, b), -1.0);
            }
        }
    auto A = SparseSymd::from_upper_triplets(nx * ny, std::move(trip));
    A.grid_hint.gx.resize(nx * ny);
    A.grid_hint.gy.resize(nx * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            A.grid_hint.gx[id(i, j)] = i;
            A.grid_hint.gy[id(i, j)] = j;
        }
    A.grid_hint.periodic_x = periodic;
    A.grid_hint.periodic_y = periodic;
    return A;
}

} // namespace

TEST_CASE("sparse assembly basics") {
    auto A = SparseSymd::from_upper_triplets(3, {{0, 0, 1.0}, {1, 1, 2.0}, {2, 2, 3.0}, {0, 1, 0.5}});
    REQUIRE(A.n() == 3);
    REQUIRE(A.structurally_symmetric());
    std::vector<double> x{1.0, 1.0, 1.0};
    auto y = A.matvec(x);
    REQUIRE(y[0] == Catch::Approx(1.5));
    REQUIRE(y[1] == Catch::Approx(2.5));
    REQUIRE(y[2] == Catch::Approx(3.0));
    auto hull = A.gershgorin_hull();
    REQUIRE(hull.lo <= 0.5);
    REQUIRE(hull.hi >= 3.0);
}

TEST_CASE("tridiag bisection trivial windows") {
    std::vector<double> d{1.0, 2.0, 3.0}, e{0.0, 0.0};
    auto r = tridiag_bisection(d, e, {1.5, 2.5}, 1e-12);
    REQUIRE(r.values.size() == 1);
    REQUIRE(r.values[0] == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("tridiag bisection free Dirichlet Laplacian") {
    // -u'' on (0,1), Dirichlet, h = 1/4: eigenvalues 16 (2 - 2 cos(k pi / 4))
    const double ih2 = 16.0;
    std::vector<double> d(3, 2.0 * ih2), e(2, -ih2);
    auto r = tridiag_bisection(d, e, {-1.0, 200.0}, 1e-11);
    REQUIRE(r.values.size() == 3);
    for (int k = 1; k <= 3; ++k)
        REQUIRE(r.values[k - 1] ==
                Catch::Approx(ih2 * (2.0 - 2.0 * std::cos(k * pi / 4.0))).margin(1e-8));
}

TEST_CASE("random tridiagonal against dense oracle") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const int n = 60;
    std::vector<double> d(n), e(n - 1);
    for (auto& x : d) x = u(rng);
    for (auto& x : e) x = u(rng);
    std::vector<double> dense(n * n, 0.0);
    for (int i = 0; i < n; ++i) dense[i * n + i] = d[i];
    for (int i = 0; i + 1 < n; ++i) dense[i * n + i + 1] = dense[(i + 1) * n + i] = e[i];
    auto oracle = dense_sym_eig(dense, n);
    auto mine = tridiag_bisection(d, e, {-10.0, 10.0}, 1e-12);
    REQUIRE(mine.values.size() == oracle.values.size());
    for (std::size_t k = 0; k < mine.values.size(); ++k)
        REQUIRE(mine.values[k] == Catch::Approx(oracle.values[k]).margin(1e-10));
}

TEST_CASE("dense eigensolver sanity") {
    // [[2,1],[1,2]] -> {1,3}
    auto r = dense_sym_eig({2.0, 1.0, 1.0, 2.0}, 2, true);
    REQUIRE(r.values[0] == Catch::Approx(1.0));
    REQUIRE(r.values[1] == Catch::Approx(3.0));
    // vectors orthonormal and satisfy A v = lambda v
    for (int k = 0; k < 2; ++k) {
        double v0 = r.vectors[0 * 2 + k], v1 = r.vectors[1 * 2 + k];
        REQUIRE(v0 * v0 + v1 * v1 == Catch::Approx(1.0).margin(1e-12));
        double a0 = 2 * v0 + v1, a1 = v0 + 2 * v1;
        REQUIRE(a0 == Catch::Approx(r.values[k] * v0).margin(1e-10));
        REQUIRE(a1 == Catch::Approx(r.values[k] * v1).margin(1e-10));
    }
}

TEST_CASE("dense eigensolver random residuals") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 40;
    std::vector<double> a(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) a[i * n + j] = a[j * n + i] = u(rng);
    auto orig = a;
    auto r = dense_sym_eig(a, n, true);
    for (int k = 0; k < n; ++k) {
        double resid = 0.0, nrm = 0.0;
        for (int i = 0; i < n; ++i) {
            double av = 0.0;
            for (int j = 0; j < n; ++j) av += orig[i * n + j] * r.vectors[j * n + k];
            double diff = av - r.values[k] * r.vectors[i * n + k];
            resid += diff * diff;
            nrm += r.vectors[i * n + k] * r.vectors[i * n + k];
        }
        REQUIRE(std::sqrt(resid) < 1e-9);
        REQUIRE(std::sqrt(nrm) == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("ldlt inertia matches dense counts on a grid operator") {
    auto A = laplacian_2d(13, 11, false);
    auto dense = detail::dense_oracle_spectrum(A);
    SpectralSlicer<double> slicer(A);
    for (double x : {0.513, 1.007, 2.043, 3.71, 5.087, 7.91}) {
        int mine = slicer.count_below(x);
        int want = 0;
        for (double v : dense.values)
            if (v < x) ++want;
        REQUIRE(mine == want);
    }
}

TEST_CASE("ldlt solve on periodic grid matches dense solve") {
    auto A = laplacian_2d(8, 6, true);
    SymFactorizer<double> F(A);
    REQUIRE(F.refactor(-0.37, 1e-13) == FactorStatus::ok);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> b(A.n());
    for (auto& x : b) x = u(rng);
    auto x = F.solve(b);
    // residual of (A + 0.37 I) x = b
    auto Ax = A.matvec(x);
    double resid = 0.0;
    for (int i = 0; i < A.n(); ++i) {
        double r = Ax[i] + 0.37 * x[i] - b[i];
        resid += r * r;
    }
    REQUIRE(std::sqrt(resid) < 1e-10);
}

TEST_CASE("ldlt hermitian inertia against embedded dense") {
    // small complex Hermitian: grid Laplacian with a phase on one wrap link
    const int n = 16;
    std::vector<std::tuple<int, int, std::complex<double>>> trip;
    for (int i = 0; i < n; ++i) {
        trip.emplace_back(i, i, std::complex<double>(2.0 + 0.1 * i, 0.0));
        if (i + 1 < n) trip.emplace_back(i, i + 1, std::complex<double>(-1.0, 0.0));
    }
    trip.emplace_back(0, n - 1, -std::exp(std::complex<double>(0.0, -1.1)));
    auto A = SparseHermz::from_upper_triplets(n, std::move(trip));
    auto dense = detail::dense_oracle_spectrum(A);
    SpectralSlicer<std::complex<double>> slicer(A);
    for (double x : {0.3, 1.1, 2.4, 3.3}) {
        int mine = slicer.count_below(x);
        int want = 0;
        for (double v : dense.values)
            if (v < x) ++want;
        REQUIRE(mine == want);
    }
}

TEST_CASE("slicer locate certifies and finds all eigenvalues") {
    auto A = laplacian_2d(9, 9, false);
    auto dense = detail::dense_oracle_spectrum(A);
    SpectralSlicer<double> slicer(A);
    Interval w{1.013, 2.987};
    auto vals = slicer.locate(w, 1e-10);
    std::vector<double> want;
    for (double v : dense.values)
        if (w.contains(v)) want.push_back(v);
    REQUIRE(vals.size() == want.size());
    for (std::size_t k = 0; k < vals.size(); ++k)
        REQUIRE(vals[k] == Catch::Approx(want[k]).margin(1e-8));
}

TEST_CASE("slicer shrugs off shifts that hit eigenvalues") {
    // diag(1,2,3): counting below 2.0 lands exactly on an eigenvalue
    auto A = SparseSymd::from_upper_triplets(3, {{0, 0, 1.0}, {1, 1, 2.0}, {2, 2, 3.0}});
    SpectralSlicer<double> slicer(A);
    int c = slicer.count_below(2.0);
    REQUIRE((c == 1 || c == 2)); // perturbed boundary; either side is consistent
    REQUIRE(slicer.count_in({1.5, 2.5}) == 1);
}

TEST_CASE("orderings are permutations") {
    auto A = laplacian_2d(17, 9, true);
    auto p = nested_dissection_order(A);
    std::vector<char> seen(A.n(), 0);
    for (int v : p) {
        REQUIRE(v >= 0);
        REQUIRE(v < A.n());
        REQUIRE(!seen[v]);
        seen[v] = 1;
    }
    auto B = laplacian_2d(10, 10, false);
    B.grid_hint = GridHint{}; // force the RCM path
    auto q = rcm_order(B);
    std::vector<char> seen2(B.n(), 0);
    for (int v : q) {
        REQUIRE(!seen2[v]);
        seen2[v] = 1;
    }
    SymFactorizer<double> F(B, q);
    REQUIRE(F.refactor(-1.0, 1e-13) == FactorStatus::ok);
    REQUIRE(F.negative_pivots() == 0);
}

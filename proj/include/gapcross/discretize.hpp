#pragma once

// Finite-difference assembly of -Laplace + V on intervals, strips, boxes and
// (cut) discs. Second-order central stencils throughout; the mesh is chosen
// so period boundaries and the interface x=0 fall on nodes, and the
// dislocation parameter t is snapped to the h-grid. Curved boundaries use a
// plain staircase Dirichlet mask.

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "gapcross/common.hpp"
#include "gapcross/sparse.hpp"

namespace gapcross {

enum class Bc { periodic, antiperiodic, dirichlet, bloch };

using Sampler1D = std::function<double(double)>;
using Sampler2D = std::function<double(double, double)>;

template <class T> struct Assembled {
    SparseSym<T> matrix;
    double h = 0.0;
    Bc bc_x = Bc::periodic;
    Bc bc_y = Bc::periodic;
    double bloch_phase = 0.0;
    double snapped_t = 0.0; // recorded when a dislocation parameter was snapped
    std::string geometry;
    std::vector<double> node_x, node_y; // coordinates per unknown

    int dimension() const { return matrix.n(); }
};

using AssembledOp = Assembled<double>;
using AssembledOpz = Assembled<std::complex<double>>;

namespace detail {

inline int snapped_cells(double length, double h, const char* what) {
    double cells = length / h;
    int n = static_cast<int>(std::llround(cells));
    if (n < 1 || std::abs(cells - n) > 1e-9 * std::max(1.0, cells))
        throw validation_error(std::string(what) + ": mesh size must divide the domain length");
    return n;
}

} // namespace detail

// 1D operator on (a,b). Periodic/antiperiodic: unknowns at a + i h,
// i = 0..N-1 with the end node identified. Dirichlet: interior nodes only.
inline AssembledOp assemble_1d(const Sampler1D& V, double a, double b, Bc bc, double h) {
    if (!(b - a >= 2.0 * h)) throw validation_error("assemble_1d: interval shorter than 2h");
    const int cells = detail::snapped_cells(b - a, h, "assemble_1d");
    const double ih2 = 1.0 / (h * h);
    AssembledOp op;
    op.h = h;
    op.bc_x = bc;
    op.bc_y = Bc::dirichlet;
    op.geometry = "interval";

    std::vector<std::tuple<int, int, double>> trip;
    int n = 0;
    if (bc == Bc::dirichlet) {
        n = cells - 1;
        if (n < 3) throw validation_error("assemble_1d: fewer than 3 nodes");
        for (int i = 0; i < n; ++i) {
            double x = a + (i + 1) * h;
            op.node_x.push_back(x);
            trip.emplace_back(i, i, 2.0 * ih2 + V(x));
            if (i + 1 < n) trip.emplace_back(i, i + 1, -ih2);
        }
    } else if (bc == Bc::periodic || bc == Bc::antiperiodic) {
        n = cells;
        if (n < 3) throw validation_error("assemble_1d: fewer than 3 nodes");
        for (int i = 0; i < n; ++i) {
            double x = a + i * h;
            op.node_x.push_back(x);
            trip.emplace_back(i, i, 2.0 * ih2 + V(x));
            if (i + 1 < n) trip.emplace_back(i, i + 1, -ih2);
        }
        trip.emplace_back(0, n - 1, bc == Bc::periodic ? -ih2 : ih2);
    } else {
        throw validation_error("assemble_1d: use assemble_1d_bloch for Bloch conditions");
    }
    op.node_y.assign(n, 0.0);
    op.matrix = SparseSymd::from_upper_triplets(n, std::move(trip));
    op.matrix.grid_hint.gx.resize(n);
    for (int i = 0; i < n; ++i) op.matrix.grid_hint.gx[i] = i;
    op.matrix.grid_hint.gy.assign(n, 0);
    op.matrix.grid_hint.periodic_x = (bc != Bc::dirichlet);
    return op;
}

// 1D Bloch fiber on one period [a, a+1): u(x+1) = e^{i phi} u(x).
inline AssembledOpz assemble_1d_bloch(const Sampler1D& V, double a, double phi, double h) {
    const int n = detail::snapped_cells(1.0, h, "assemble_1d_bloch");
    if (n < 3) throw validation_error("assemble_1d_bloch: fewer than 3 nodes");
    phi = phi - 2.0 * pi * std::floor(phi / (2.0 * pi)); // normalized, not rejected
    const double ih2 = 1.0 / (h * h);
    AssembledOpz op;
    op.h = h;
    op.bc_x = Bc::bloch;
    op.bloch_phase = phi;
    op.geometry = "bloch-cell";
    std::vector<std::tuple<int, int, std::complex<double>>> trip;
    for (int i = 0; i < n; ++i) {
        double x = a + i * h;
        op.node_x.push_back(x);
        trip.emplace_back(i, i, std::complex<double>(2.0 * ih2 + V(x), 0.0));
        if (i + 1 < n) trip.emplace_back(i, i + 1, std::complex<double>(-ih2, 0.0));
    }
    // row 0 couples to node n-1 across the cell boundary via u(-h) = e^{-i phi} u(1-h)
    trip.emplace_back(0, n - 1, -ih2 * std::exp(std::complex<double>(0.0, -phi)));
    op.node_y.assign(n, 0.0);
    op.matrix = SparseHermz::from_upper_triplets(n, std::move(trip));
    op.matrix.grid_hint.gx.resize(n);
    for (int i = 0; i < n; ++i) op.matrix.grid_hint.gx[i] = i;
    op.matrix.grid_hint.gy.assign(n, 0);
    op.matrix.grid_hint.periodic_x = true;
    return op;
}

namespace detail {

template <class T>
void finish_grid_op(Assembled<T>& op, int nx, int ny, bool per_x, bool per_y,
                    std::vector<std::tuple<int, int, T>> trip) {
    const int n = nx * ny;
    op.matrix = SparseSym<T>::from_upper_triplets(n, std::move(trip));
    op.matrix.grid_hint.gx.resize(n);
    op.matrix.grid_hint.gy.resize(n);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            op.matrix.grid_hint.gx[i * ny + j] = i;
            op.matrix.grid_hint.gy[i * ny + j] = j;
        }
    op.matrix.grid_hint.periodic_x = per_x;
    op.matrix.grid_hint.periodic_y = per_y;
}

} // namespace detail

// Strip section (-n - t, n) x (0,1), periodic in both directions; t is
// snapped to the h-grid and the snapped value recorded.
inline AssembledOp assemble_strip(const Sampler2D& V, double t, int n, double h) {
    const int ny = detail::snapped_cells(1.0, h, "assemble_strip");
    const double ts = snap_to_grid(t, h);
    const int nx = detail::snapped_cells(2.0 * n + ts, h, "assemble_strip");
    if (nx < 3 || ny < 3) throw validation_error("assemble_strip: fewer than 3 nodes per direction");
    const double x0 = -n - ts;
    const double ih2 = 1.0 / (h * h);
    AssembledOp op;
    op.h = h;
    op.snapped_t = ts;
    op.geometry = "strip";
    std::vector<std::tuple<int, int, double>> trip;
    trip.reserve(static_cast<std::size_t>(nx) * ny * 3);
    op.node_x.resize(static_cast<std::size_t>(nx) * ny);
    op.node_y.resize(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            int id = i * ny + j;
            double x = x0 + i * h, y = j * h;
            op.node_x[id] = x;
            op.node_y[id] = y;
            trip.emplace_back(id, id, 4.0 * ih2 + V(x, y));
            int iright = (i + 1) % nx;
            int jup = (j + 1) % ny;
            int right = iright * ny + j;
            int up = i * ny + jup;
            trip.emplace_back(std::min(id, right), std::max(id, right), -ih2);
            trip.emplace_back(std::min(id, up), std::max(id, up), -ih2);
        }
    detail::finish_grid_op(op, nx, ny, true, true, std::move(trip));
    return op;
}

// Strip section with a Bloch phase across the transverse period.
inline AssembledOpz assemble_strip_bloch(const Sampler2D& V, double t, int n, double phi, double h) {
    const int ny = detail::snapped_cells(1.0, h, "assemble_strip_bloch");
    const double ts = snap_to_grid(t, h);
    const int nx = detail::snapped_cells(2.0 * n + ts, h, "assemble_strip_bloch");
    if (nx < 3 || ny < 3) throw validation_error("assemble_strip_bloch: fewer than 3 nodes per direction");
    const double x0 = -n - ts;
    const double ih2 = 1.0 / (h * h);
    phi = phi - 2.0 * pi * std::floor(phi / (2.0 * pi));
    AssembledOpz op;
    op.h = h;
    op.snapped_t = ts;
    op.bc_y = Bc::bloch;
    op.bloch_phase = phi;
    op.geometry = "strip-bloch";
    std::vector<std::tuple<int, int, std::complex<double>>> trip;
    op.node_x.resize(static_cast<std::size_t>(nx) * ny);
    op.node_y.resize(static_cast<std::size_t>(nx) * ny);
    // row (j=0) couples to (j=ny-1): u(-h) = e^{-i phi} u(1-h)
    const std::complex<double> wrap = -ih2 * std::exp(std::complex<double>(0.0, -phi));
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            int id = i * ny + j;
            double x = x0 + i * h, y = j * h;
            op.node_x[id] = x;
            op.node_y[id] = y;
            trip.emplace_back(id, id, std::complex<double>(4.0 * ih2 + V(x, y), 0.0));
            int right = ((i + 1) % nx) * ny + j;
            trip.emplace_back(std::min(id, right), std::max(id, right),
                              std::complex<double>(-ih2, 0.0));
            if (j + 1 < ny)
                trip.emplace_back(id, id + 1, std::complex<double>(-ih2, 0.0));
            else
                trip.emplace_back(i * ny, id, wrap); // (j=0) <- (j=ny-1) boundary coupling
        }
    detail::finish_grid_op(op, nx, ny, true, true, std::move(trip));
    return op;
}

struct BoxGeom {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    static BoxGeom square(double n) { return {-n, n, -n, n}; }
    static BoxGeom square_at(double n, double cy) { return {-n, n, cy - n, cy + n}; }
};

// Dirichlet box; boundary values eliminated.
inline AssembledOp assemble_box(const Sampler2D& V, const BoxGeom& g, double h) {
    if (!(g.x1 - g.x0 >= 2.0 * h) || !(g.y1 - g.y0 >= 2.0 * h))
        throw validation_error("assemble_box: box side shorter than 2h");
    const int cx = detail::snapped_cells(g.x1 - g.x0, h, "assemble_box");
    const int cy = detail::snapped_cells(g.y1 - g.y0, h, "assemble_box");
    const int nx = cx - 1, ny = cy - 1;
    const double ih2 = 1.0 / (h * h);
    AssembledOp op;
    op.h = h;
    op.bc_x = op.bc_y = Bc::dirichlet;
    op.geometry = "box";
    std::vector<std::tuple<int, int, double>> trip;
    trip.reserve(static_cast<std::size_t>(nx) * ny * 3);
    op.node_x.resize(static_cast<std::size_t>(nx) * ny);
    op.node_y.resize(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            int id = i * ny + j;
            double x = g.x0 + (i + 1) * h, y = g.y0 + (j + 1) * h;
            op.node_x[id] = x;
            op.node_y[id] = y;
            trip.emplace_back(id, id, 4.0 * ih2 + V(x, y));
            if (i + 1 < nx) trip.emplace_back(id, id + ny, -ih2);
            if (j + 1 < ny) trip.emplace_back(id, id + 1, -ih2);
        }
    detail::finish_grid_op(op, nx, ny, false, false, std::move(trip));
    return op;
}

struct DiscGeom {
    double cx = 0.0, cy = 0.0, r = 0.0;
    bool cut_left = false; // intersect with {x < 0}
};

// Dirichlet Laplacian (+ optional potential) on a staircase disc mask.
// Nodes sit on the global grid (i h, j h); the mask keeps nodes strictly
// inside the disc, and the cut keeps x < 0. An empty mask yields a
// dimension-0 operator, which callers read as "no eigenvalues below +inf".
inline AssembledOp assemble_disc(const DiscGeom& g, double h, const Sampler2D* V = nullptr) {
    if (!(g.r >= 4.0 * h)) throw validation_error("assemble_disc: need r >= 4h");
    const double ih2 = 1.0 / (h * h);
    AssembledOp op;
    op.h = h;
    op.bc_x = op.bc_y = Bc::dirichlet;
    op.geometry = g.cut_left ? "cut-disc" : "disc";
    const int imin = static_cast<int>(std::floor((g.cx - g.r) / h)) - 1;
    const int imax = static_cast<int>(std::ceil((g.cx + g.r) / h)) + 1;
    const int jmin = static_cast<int>(std::floor((g.cy - g.r) / h)) - 1;
    const int jmax = static_cast<int>(std::ceil((g.cy + g.r) / h)) + 1;
    auto inside = [&](int i, int j) {
        double x = i * h, y = j * h;
        if (g.cut_left && !(x < 0.0)) return false;
        double dx = x - g.cx, dy = y - g.cy;
        return dx * dx + dy * dy < g.r * g.r;
    };
    std::vector<std::vector<int>> id(imax - imin + 1, std::vector<int>(jmax - jmin + 1, -1));
    int n = 0;
    for (int i = imin; i <= imax; ++i)
        for (int j = jmin; j <= jmax; ++j)
            if (inside(i, j)) {
                id[i - imin][j - jmin] = n++;
                op.node_x.push_back(i * h);
                op.node_y.push_back(j * h);
            }
    std::vector<std::tuple<int, int, double>> trip;
    op.matrix = SparseSymd{};
    if (n == 0) {
        op.matrix = SparseSymd::from_upper_triplets(0, {});
        return op;
    }
    std::vector<int> gx(n), gy(n);
    for (int i = imin; i <= imax; ++i)
        for (int j = jmin; j <= jmax; ++j) {
            int me = id[i - imin][j - jmin];
            if (me < 0) continue;
            gx[me] = i - imin;
            gy[me] = j - jmin;
            double pot = V ? (*V)(i * h, j * h) : 0.0;
            trip.emplace_back(me, me, 4.0 * ih2 + pot);
            if (i + 1 <= imax && id[i + 1 - imin][j - jmin] >= 0)
                trip.emplace_back(me, id[i + 1 - imin][j - jmin], -ih2);
            if (j + 1 <= jmax && id[i - imin][j + 1 - jmin] >= 0)
                trip.emplace_back(me, id[i - imin][j + 1 - jmin], -ih2);
        }
    op.matrix = SparseSymd::from_upper_triplets(n, std::move(trip));
    op.matrix.grid_hint.gx = std::move(gx);
    op.matrix.grid_hint.gy = std::move(gy);
    return op;
}

} // namespace gapcross

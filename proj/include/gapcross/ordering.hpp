#pragma once

// Fill-reducing orderings for the in-repo LDL^T factorization.
//
// Matrices here come from finite-difference grids, so the main ordering is a
// geometric nested dissection that cuts along grid lines (the assembler
// passes node coordinates via GridHint). Periodic directions are handled by
// removing two parallel lines on the first cut in that direction, which
// turns the ring into two ordinary segments. Matrices without grid structure
// fall back to reverse Cuthill-McKee.

#include <algorithm>
#include <numeric>
#include <queue>
#include <vector>

#include "gapcross/sparse.hpp"

namespace gapcross {

namespace detail {

struct NdWorkspace {
    const std::vector<int>* gx = nullptr;
    const std::vector<int>* gy = nullptr;
    std::vector<int> order; // filled in elimination order
};

// Order `nodes` by nested dissection; separators are appended after their
// two sides so they are eliminated last.
inline void nd_recurse(NdWorkspace& ws, std::vector<int> nodes, bool per_x, bool per_y) {
    constexpr std::size_t leaf = 48;
    if (nodes.size() <= leaf) {
        // Natural order within a leaf keeps the result deterministic.
        std::sort(nodes.begin(), nodes.end());
        for (int v : nodes) ws.order.push_back(v);
        return;
    }
    const auto& gx = *ws.gx;
    const auto& gy = *ws.gy;
    int xmin = gx[nodes[0]], xmax = xmin, ymin = gy[nodes[0]], ymax = ymin;
    for (int v : nodes) {
        xmin = std::min(xmin, gx[v]);
        xmax = std::max(xmax, gx[v]);
        ymin = std::min(ymin, gy[v]);
        ymax = std::max(ymax, gy[v]);
    }
    bool cut_x = (xmax - xmin) >= (ymax - ymin);
    // Give periodic directions priority: until their ring is cut once they
    // cannot be separated by a single line.
    if (per_x && !per_y) cut_x = true;
    if (per_y && !per_x) cut_x = false;
    const std::vector<int>& c = cut_x ? gx : gy;
    int cmin = cut_x ? xmin : ymin;
    int cmax = cut_x ? xmax : ymax;
    if (cmin == cmax) {
        // Degenerate in the chosen direction; try the other one.
        const std::vector<int>& c2 = cut_x ? gy : gx;
        int c2min = cut_x ? ymin : xmin, c2max = cut_x ? ymax : xmax;
        if (c2min == c2max) {
            std::sort(nodes.begin(), nodes.end());
            for (int v : nodes) ws.order.push_back(v);
            return;
        }
        cut_x = !cut_x;
        cmin = c2min;
        cmax = c2max;
    }
    const std::vector<int>& coord = cut_x ? gx : gy;
    bool periodic_here = cut_x ? per_x : per_y;
    int mid = cmin + (cmax - cmin) / 2;

    std::vector<int> left, right, sep;
    if (periodic_here) {
        // Two cut lines turn the ring into two segments.
        int cut2 = cmin;
        for (int v : nodes) {
            int cv = coord[v];
            if (cv == mid || cv == cut2)
                sep.push_back(v);
            else if (cv > cut2 && cv < mid)
                left.push_back(v);
            else
                right.push_back(v);
        }
    } else {
        for (int v : nodes) {
            int cv = coord[v];
            if (cv == mid)
                sep.push_back(v);
            else if (cv < mid)
                left.push_back(v);
            else
                right.push_back(v);
        }
    }
    if (left.empty() && right.empty()) {
        std::sort(sep.begin(), sep.end());
        for (int v : sep) ws.order.push_back(v);
        return;
    }
    bool npx = per_x && !(periodic_here && cut_x);
    bool npy = per_y && !(periodic_here && !cut_x);
    nodes.clear();
    nodes.shrink_to_fit();
    if (!left.empty()) nd_recurse(ws, std::move(left), npx, npy);
    if (!right.empty()) nd_recurse(ws, std::move(right), npx, npy);
    std::sort(sep.begin(), sep.end());
    for (int v : sep) ws.order.push_back(v);
}

} // namespace detail

// Returns perm with perm[k] = original index eliminated at step k.
template <class T> std::vector<int> nested_dissection_order(const SparseSym<T>& A) {
    const GridHint& g = A.grid_hint;
    detail::NdWorkspace ws;
    ws.gx = &g.gx;
    ws.gy = &g.gy;
    ws.order.reserve(A.n());
    std::vector<int> all(A.n());
    std::iota(all.begin(), all.end(), 0);
    detail::nd_recurse(ws, std::move(all), g.periodic_x, g.periodic_y);
    return ws.order;
}

template <class T> std::vector<int> rcm_order(const SparseSym<T>& A) {
    const int n = A.n();
    std::vector<int> deg(n, 0);
    for (int j = 0; j < n; ++j)
        for (std::int64_t p = A.col_ptr()[j]; p < A.col_ptr()[j + 1]; ++p)
            if (A.row_idx()[p] != j) ++deg[j];
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        // Start each component from its minimum-degree vertex.
        int root = start;
        // BFS to find a pseudo-peripheral-ish root: take the last vertex of a
        // BFS from the min-degree start.
        std::queue<int> q;
        q.push(start);
        seen[start] = 1;
        std::vector<int> comp{start};
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            root = u;
            for (std::int64_t p = A.col_ptr()[u]; p < A.col_ptr()[u + 1]; ++p) {
                int v = A.row_idx()[p];
                if (!seen[v]) {
                    seen[v] = 1;
                    comp.push_back(v);
                    q.push(v);
                }
            }
        }
        for (int v : comp) seen[v] = 0;
        // Cuthill-McKee from root.
        std::vector<int> cm;
        cm.reserve(comp.size());
        seen[root] = 1;
        cm.push_back(root);
        for (std::size_t head = 0; head < cm.size(); ++head) {
            int u = cm[head];
            std::vector<int> nbrs;
            for (std::int64_t p = A.col_ptr()[u]; p < A.col_ptr()[u + 1]; ++p) {
                int v = A.row_idx()[p];
                if (!seen[v]) {
                    seen[v] = 1;
                    nbrs.push_back(v);
                }
            }
            std::sort(nbrs.begin(), nbrs.end(), [&](int a, int b) {
                if (deg[a] != deg[b]) return deg[a] < deg[b];
                return a < b;
            });
            for (int v : nbrs) cm.push_back(v);
        }
        order.insert(order.end(), cm.rbegin(), cm.rend());
    }
    return order;
}

template <class T> std::vector<int> fill_reducing_order(const SparseSym<T>& A) {
    if (!A.grid_hint.empty()) return nested_dissection_order(A);
    return rcm_order(A);
}

} // namespace gapcross

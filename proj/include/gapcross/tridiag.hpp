#pragma once

// Sturm-sequence bisection for real symmetric tridiagonal matrices.
// Counting is exact in the Sylvester sense; every eigenvalue in the window
// is located to the requested tolerance and certified by the counts.

#include <cmath>
#include <vector>

#include "gapcross/common.hpp"

namespace gapcross {

// Number of eigenvalues of tridiag(b, a, b) strictly below x.
inline int sturm_count(const std::vector<double>& a, const std::vector<double>& b, double x) {
    const int n = static_cast<int>(a.size());
    int count = 0;
    double d = 1.0;
    const double tiny = 1e-300;
    for (int i = 0; i < n; ++i) {
        double off = (i == 0) ? 0.0 : b[i - 1];
        d = a[i] - x - off * off / d;
        if (d == 0.0) d = -tiny;
        if (d < 0.0) ++count;
    }
    return count;
}

struct TridiagWindowResult {
    std::vector<double> values; // ascending
    int count_below_lo = 0;
    int count_below_hi = 0;
    bool lo_nudged = false;
    bool hi_nudged = false;
};

// All eigenvalues in (window.lo, window.hi), each to absolute tolerance tol.
// If a window endpoint sits on an eigenvalue (within tol) it is nudged
// outward by 2*tol and the nudge is recorded.
inline TridiagWindowResult tridiag_bisection(const std::vector<double>& diag,
                                             const std::vector<double>& offdiag, Interval window,
                                             double tol) {
    TridiagWindowResult res;
    double lo = window.lo, hi = window.hi;
    auto endpoint_clear = [&](double x) {
        return sturm_count(diag, offdiag, x - tol) == sturm_count(diag, offdiag, x + tol);
    };
    if (!endpoint_clear(lo)) {
        lo -= 2.0 * tol;
        res.lo_nudged = true;
    }
    if (!endpoint_clear(hi)) {
        hi += 2.0 * tol;
        res.hi_nudged = true;
    }
    int clo = sturm_count(diag, offdiag, lo);
    int chi = sturm_count(diag, offdiag, hi);
    res.count_below_lo = clo;
    res.count_below_hi = chi;
    for (int j = clo + 1; j <= chi; ++j) {
        double a = lo, b = hi;
        while (b - a > tol) {
            double m = 0.5 * (a + b);
            if (sturm_count(diag, offdiag, m) >= j)
                b = m;
            else
                a = m;
        }
        res.values.push_back(0.5 * (a + b));
    }
    return res;
}

} // namespace gapcross

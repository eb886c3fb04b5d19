#pragma once

// Shared small types and helpers used across the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace gapcross {

// Closed or open energy interval; openness is decided by the consumer.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return x > lo && x < hi; }
    bool contains_closed(double x) const { return x >= lo && x <= hi; }
    bool empty() const { return !(lo < hi); }

    Interval shrunk(double margin) const { return {lo + margin, hi - margin}; }
};

struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical contract was violated (e.g. a count law failed); distinct from
// bad input so the CLI can map it to its own exit code.
struct contract_error : std::runtime_error {
    explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

inline double frac(double x) { return x - std::floor(x); }

// Distance of x to the nearest point of t + Z (circle metric on R/Z).
inline double torus_dist(double x, double t) {
    double d = frac(x - t);
    return std::min(d, 1.0 - d);
}

// Snap t >= 0 to the nearest multiple of h.
inline double snap_to_grid(double t, double h) { return std::round(t / h) * h; }

inline bool nearly_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }

constexpr double pi = 3.14159265358979323846;

inline std::uint64_t default_seed() { return 0x67617063726f7373ull; }

} // namespace gapcross

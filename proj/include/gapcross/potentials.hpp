#pragma once

// Potential models. Every potential is a pure sampler plus regularity
// metadata; samplers reduce their arguments mod 1 before evaluating, so
// periodicity holds bit-for-bit. The interface line {x=0} belongs to the
// right piece throughout.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gapcross/common.hpp"

namespace gapcross {

enum class Regularity { l1loc, holder, lipschitz };

struct Potential1D {
    std::function<double(double)> cell; // defined on [0,1)
    double period = 1.0;
    Regularity regularity = Regularity::l1loc;
    double holder_alpha = 1.0;     // only meaningful for Regularity::holder
    double l1_mean_constant = 0.0; // C with  int_0^1 |V(x+s)-V(x)| dx <= C s^alpha
    double bound = 0.0;            // sup norm
    double min_value = 0.0;
    std::string descriptor;

    double sample(double x) const { return cell(frac(x)); }
};

struct Potential2D {
    std::function<double(double, double)> cell; // defined on [0,1)^2
    double lipschitz_constant = 0.0;
    double bound = 0.0;
    double min_value = 0.0;
    std::string descriptor;

    double sample(double x, double y) const { return cell(frac(x), frac(y)); }
};

struct StepLevel {
    double from = 0.0;
    double to = 0.0;
    double value = 0.0;
};

// Piecewise-constant periodic potential; the levels must partition [0,1).
inline Potential1D make_step_potential(std::vector<StepLevel> levels) {
    if (levels.empty()) throw validation_error("step potential: no levels");
    std::sort(levels.begin(), levels.end(),
              [](const StepLevel& a, const StepLevel& b) { return a.from < b.from; });
    if (levels.front().from != 0.0) throw validation_error("step potential: must start at 0");
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (levels[i].to != levels[i + 1].from)
            throw validation_error("step potential: levels must partition [0,1) without gaps or overlap");
    if (levels.back().to != 1.0) throw validation_error("step potential: must end at 1");
    for (const auto& l : levels)
        if (!(l.from < l.to)) throw validation_error("step potential: empty level");

    double bound = 0.0, vmin = levels[0].value;
    for (const auto& l : levels) {
        bound = std::max(bound, std::abs(l.value));
        vmin = std::min(vmin, l.value);
    }
    // total jump variation per period, wrap jump included
    double var = std::abs(levels.front().value - levels.back().value);
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        var += std::abs(levels[i + 1].value - levels[i].value);

    Potential1D p;
    p.cell = [levels](double x) {
        // right-continuous lookup
        for (const auto& l : levels)
            if (x >= l.from && x < l.to) return l.value;
        return levels.back().value;
    };
    p.regularity = Regularity::holder;
    p.holder_alpha = 1.0;
    p.l1_mean_constant = var;
    p.bound = bound;
    p.min_value = vmin;
    p.descriptor = "step";
    return p;
}

struct TrigTerm {
    int k = 1;
    double amplitude = 0.0;
    double phase = 0.0;
};

inline Potential1D make_trig_potential(std::vector<TrigTerm> terms) {
    double bound = 0.0, lip = 0.0;
    for (const auto& t : terms) {
        bound += std::abs(t.amplitude);
        lip += std::abs(t.amplitude) * 2.0 * pi * std::abs(t.k);
    }
    Potential1D p;
    p.cell = [terms](double x) {
        double v = 0.0;
        for (const auto& t : terms) v += t.amplitude * std::cos(2.0 * pi * t.k * x + t.phase);
        return v;
    };
    p.regularity = Regularity::lipschitz;
    p.l1_mean_constant = lip;
    p.bound = bound;
    p.min_value = -bound;
    p.descriptor = "trig";
    return p;
}

// V(x,y) = v(x); transverse direction free.
inline Potential2D make_separable_x(const Potential1D& v) {
    Potential2D p;
    p.cell = [v](double x, double) { return v.sample(x); };
    p.lipschitz_constant = (v.regularity == Regularity::lipschitz) ? v.l1_mean_constant : 0.0;
    p.bound = v.bound;
    p.min_value = v.min_value;
    p.descriptor = "separable-x(" + v.descriptor + ")";
    return p;
}

// V(x,y) = v(x) + w(y); spectra decouple into a tensor sum.
inline Potential2D make_separable_sum(const Potential1D& v, const Potential1D& w) {
    Potential2D p;
    p.cell = [v, w](double x, double y) { return v.sample(x) + w.sample(y); };
    double lv = (v.regularity == Regularity::lipschitz) ? v.l1_mean_constant : 0.0;
    double lw = (w.regularity == Regularity::lipschitz) ? w.l1_mean_constant : 0.0;
    p.lipschitz_constant = std::hypot(lv, lw);
    p.bound = v.bound + w.bound;
    p.min_value = v.min_value + w.min_value;
    p.descriptor = "separable-sum(" + v.descriptor + "," + w.descriptor + ")";
    return p;
}

struct DislocationPotential1D {
    Potential1D base;
    double t = 0.0; // in [0,1]
    double sample(double x) const { return x >= 0.0 ? base.sample(x) : base.sample(x + t); }
};

struct DislocationPotential2D {
    Potential2D base;
    double t = 0.0;
    double sample(double x, double y) const {
        return x >= 0.0 ? base.sample(x, y) : base.sample(x + t, y);
    }
};

struct RotatedPotential {
    Potential2D base;
    double theta = 0.0; // in [0, pi/2)
    double sample(double x, double y) const {
        if (x >= 0.0) return base.sample(x, y);
        // back-rotate by theta: apply M_{-theta}
        double c = std::cos(theta), s = std::sin(theta);
        return base.sample(c * x + s * y, -s * x + c * y);
    }
};

struct InterfacePotential {
    std::function<double(double, double)> left;  // used on {x<0}
    std::function<double(double, double)> right; // used on {x>=0}
    double sample(double x, double y) const { return x < 0.0 ? left(x, y) : right(x, y); }
};

struct MuffinTinSpec {
    double r = 0.25;        // disc radius, in (0, 1/2) strictly
    double cx = 0.5, cy = 0.5; // generic disc center in [0,1)^2
    std::optional<double> height; // empty = infinite walls (domain restriction)

    void validate() const {
        if (!(r > 0.0 && r < 0.5))
            throw validation_error("muffin tin: radius must lie strictly inside (0, 1/2)");
        if (cx < 0.0 || cx >= 1.0 || cy < 0.0 || cy >= 1.0)
            throw validation_error("muffin tin: center must lie in [0,1)^2");
        if (height && (*height <= 0.0 || std::floor(*height) != *height))
            throw validation_error("muffin tin: height must be a positive integer");
    }
};

// batch sampling entry points

inline std::vector<double> sample_dislocation(const DislocationPotential1D& w,
                                              const std::vector<double>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(w.sample(x));
    return out;
}

inline std::vector<double> sample_dislocation(const DislocationPotential2D& w,
                                              const std::vector<std::pair<double, double>>& pts) {
    std::vector<double> out;
    out.reserve(pts.size());
    for (auto [x, y] : pts) out.push_back(w.sample(x, y));
    return out;
}

inline std::vector<double> sample_rotated(const RotatedPotential& v,
                                          const std::vector<std::pair<double, double>>& pts) {
    std::vector<double> out;
    out.reserve(pts.size());
    for (auto [x, y] : pts) out.push_back(v.sample(x, y));
    return out;
}

// default laboratory potentials

inline Potential1D default_step_potential() {
    return make_step_potential({{0.0, 0.5, 0.0}, {0.5, 1.0, 20.0}});
}

inline Potential1D default_trig_potential() { return make_trig_potential({{1, 12.0, 0.0}}); }

// Strip work: transverse modes are discrete, so an x-only potential keeps a gap.
inline Potential2D default_strip_potential() { return make_separable_x(default_trig_potential()); }

// Plane work (boxes): an x-only potential has no plane gap, the sum does.
inline Potential2D default_plane_potential() {
    return make_separable_sum(default_trig_potential(), default_trig_potential());
}

} // namespace gapcross

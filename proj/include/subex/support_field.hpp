#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "subex/common.hpp"
#include "subex/polygon.hpp"

namespace subex {

// Finite set of evaluation directions; the 2-D default is N equally spaced
// angles covering the full circle.
struct DirectionGrid {
    std::vector<Vec2> dirs;
    std::vector<double> angles;

    static DirectionGrid uniform(int n) {
        require(n >= 3, "direction grid needs at least 3 directions");
        DirectionGrid g;
        g.dirs.reserve(n);
        g.angles.reserve(n);
        for (int i = 0; i < n; ++i) {
            double a = 2.0 * kPi * double(i) / double(n);
            g.angles.push_back(a);
            g.dirs.push_back(dir_of_angle(a));
        }
        return g;
    }

    int size() const { return int(dirs.size()); }

    bool same_as(const DirectionGrid& o) const {
        if (dirs.size() != o.dirs.size()) return false;
        for (size_t i = 0; i < dirs.size(); ++i)
            if (std::abs(angles[i] - o.angles[i]) > 1e-12) return false;
        return true;
    }
};

// Sampled support function h(u_j), optionally with boundary touch points
// x_j satisfying <x_j, u_j> = h(u_j).
struct SupportField {
    DirectionGrid grid;
    std::vector<double> values;
    std::vector<Vec2> touch;
    std::vector<char> has_touch;
    bool unbounded = false;

    static SupportField on(const DirectionGrid& g) {
        SupportField f;
        f.grid = g;
        f.values.assign(g.size(), 0.0);
        f.touch.assign(g.size(), Vec2{0, 0});
        f.has_touch.assign(g.size(), 0);
        return f;
    }

    bool all_touch() const {
        for (char c : has_touch)
            if (!c) return false;
        return !has_touch.empty();
    }

    void set(int j, double value) {
        values[j] = value;
        if (!std::isfinite(value)) unbounded = true;
    }
    void set(int j, double value, Vec2 point) {
        set(j, value);
        touch[j] = point;
        has_touch[j] = 1;
    }

    // Largest violation of grid sublinearity h(u_i + u_j) <= h(u_i) + h(u_j)
    // over pairs whose bisector is itself a grid direction.
    double sublinearity_violation() const {
        const int n = grid.size();
        const double spacing = 2.0 * kPi / double(n);
        double worst = -kInf;
        for (int i = 0; i < n; ++i) {
            for (int step = 1; step < n / 2; ++step) {
                int j = (i + 2 * step) % n;
                int k = (i + step) % n;
                double len = 2.0 * std::cos(spacing * step);  // |u_i + u_j|
                if (len <= 1e-9) continue;
                worst = std::max(worst, values[k] * len - values[i] - values[j]);
            }
        }
        return worst;
    }
};

// Certified sandwich: inner polytope, outer polytope and a Hausdorff gap
// bound valid for any convex body consistent with the sampled support values.
struct BodyEstimate {
    Polygon2 inner;
    Polygon2 outer;
    double gap = 0.0;
    bool unbounded = false;

    static BodyEstimate exact(Polygon2 p) {
        BodyEstimate b;
        b.inner = p;
        b.outer = std::move(p);
        b.gap = 0.0;
        return b;
    }

    double support(Vec2 u) const { return outer.support(u); }
};

// Assemble the sandwich from a support field: outer from the halfspace
// intersection, inner from touch points when available, otherwise from the
// outer polygon shrunk by the circumscription factor cos(pi/N).
inline BodyEstimate body_from_support(const SupportField& field) {
    BodyEstimate body;
    if (field.unbounded) {
        body.unbounded = true;
        return body;
    }
    const int n = field.grid.size();
    require(n >= 8, "body_from_support needs grid resolution >= 8");

    std::vector<Halfspace> hs;
    hs.reserve(n);
    for (int j = 0; j < n; ++j) hs.emplace_back(field.grid.dirs[j], field.values[j]);
    ClipResult outer = halfspace_intersection(hs);
    if (outer.unbounded) {
        body.unbounded = true;
        return body;
    }
    if (outer.empty) {
        // a sublinear support field always bounds a nonempty set; an empty
        // intersection only arises from inconsistent inputs
        body.gap = kInf;
        return body;
    }
    body.outer = outer.poly;

    if (field.all_touch()) {
        std::vector<Vec2> pts(field.touch.begin(), field.touch.end());
        body.inner = convex_hull(std::move(pts));
    } else {
        double factor = std::cos(kPi / double(n));
        body.inner = body.outer.scaled(factor, body.outer.centroid());
    }
    if (body.inner.is_empty()) body.inner = Polygon2::point(body.outer.centroid());

    double slack = 0.0;
    for (int j = 0; j < n; ++j)
        slack = std::max(slack, field.values[j] - body.inner.support(field.grid.dirs[j]));
    double gap = slack + body.outer.diameter() * (1.0 / std::cos(kPi / double(n)) - 1.0);
    body.gap = std::max(gap, hausdorff(body.inner, body.outer));
    return body;
}

// Weighted pointwise sum of support fields over a shared grid; touch points
// combine as the same weighted sum when every term carries them.
inline SupportField aumann_integral(
    const std::vector<std::pair<double, const SupportField*>>& terms) {
    require(!terms.empty(), "aumann integral needs at least one term");
    const SupportField& first = *terms.front().second;
    SupportField out = SupportField::on(first.grid);
    bool touch_ok = true;
    for (const auto& [w, f] : terms) {
        require(w >= 0.0, "aumann weights must be nonnegative");
        require(f->grid.same_as(first.grid), "aumann integral needs a shared grid");
        if (!f->all_touch()) touch_ok = false;
        if (f->unbounded) out.unbounded = true;
    }
    for (int j = 0; j < first.grid.size(); ++j) {
        double v = 0.0;
        Vec2 p{0, 0};
        for (const auto& [w, f] : terms) {
            v += w * f->values[j];
            if (touch_ok) p += w * f->touch[j];
        }
        if (touch_ok) out.set(j, v, p);
        else out.set(j, v);
    }
    return out;
}

// Exact support samples of a polygon (touch points at support vertices).
inline SupportField field_of_polygon(const Polygon2& P, const DirectionGrid& grid) {
    SupportField f = SupportField::on(grid);
    for (int j = 0; j < grid.size(); ++j) {
        Vec2 p = P.support_point(grid.dirs[j]);
        f.set(j, dot(p, grid.dirs[j]), p);
    }
    return f;
}

}  // namespace subex

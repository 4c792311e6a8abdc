#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "subex/common.hpp"
#include "subex/polygon.hpp"
#include "subex/shapes.hpp"

namespace subex {

// Exact planar average-quantile polytope of a discrete measure:
//   { sum lambda_i p_i x_i : lambda_i in [0, 1/alpha], sum lambda_i p_i = 1 }
// The support in direction u is attained by the greedy top-fill of the dual
// program, and its optimizer is constant between critical directions normal
// to atom differences, so a critical-angle sweep enumerates every vertex.

struct TouchPoint {
    double h = 0.0;
    Vec2 x{0.0, 0.0};
};

// Greedy dual optimizer: full weight 1/alpha on the largest projections,
// fractional weight on the marginal atom. <x, u> = h exactly.
inline TouchPoint support_touchpoint(const WeightedSample& mu, double alpha, Vec2 u) {
    require(mu.dim() == 2, "support_touchpoint requires a planar sample");
    require(alpha > 0.0 && alpha <= 1.0, "support_touchpoint needs alpha in (0,1]");
    const size_t n = mu.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t(0));
    std::vector<double> proj(n);
    for (size_t i = 0; i < n; ++i) proj[i] = dot(mu.point2(i), u);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (proj[a] != proj[b]) return proj[a] > proj[b];
        return a < b;
    });

    TouchPoint tp;
    double remaining = 1.0;  // in units of gamma_i p_i
    const double cap = 1.0 / alpha;
    for (size_t k = 0; k < n && remaining > 1e-15; ++k) {
        size_t i = order[k];
        double gp = std::min(cap * mu.weights[i], remaining);
        tp.h += gp * proj[i];
        tp.x += gp * mu.point2(i);
        remaining -= gp;
    }
    return tp;
}

// Exact vertex set of the average-quantile polytope by critical-angle sweep.
inline Polygon2 exact_avg_quantile_body(const WeightedSample& mu, double alpha) {
    require(mu.dim() == 2, "exact_avg_quantile_body requires a planar sample");
    require(alpha > 0.0 && alpha <= 1.0, "exact_avg_quantile_body needs alpha in (0,1]");
    const size_t n = mu.size();

    auto barycenter = [&] {
        Vec2 b{0, 0};
        for (size_t i = 0; i < n; ++i) b += mu.weights[i] * mu.point2(i);
        return b;
    };
    if (alpha == 1.0 || n == 1) return Polygon2::point(barycenter());

    // critical directions: normals to x_i - x_j (two per pair)
    std::vector<double> crit;
    crit.reserve(n * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            Vec2 d = mu.point2(i) - mu.point2(j);
            if (d.norm() <= 0.0) continue;
            double t = std::atan2(d.y, d.x) + 0.5 * kPi;
            t = std::fmod(t, 2.0 * kPi);
            if (t < 0.0) t += 2.0 * kPi;
            crit.push_back(t);
            double t2 = std::fmod(t + kPi, 2.0 * kPi);
            crit.push_back(t2);
        }
    }
    if (crit.empty()) return Polygon2::point(barycenter());  // all atoms equal
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end(),
                           [](double a, double b) { return b - a < 1e-14; }),
               crit.end());

    // one candidate vertex per angular cell (the greedy witness is constant
    // inside a cell); ties at cell boundaries contribute via both neighbours
    std::vector<Vec2> candidates;
    candidates.reserve(crit.size() + 1);
    for (size_t k = 0; k < crit.size(); ++k) {
        double a0 = crit[k];
        double a1 = (k + 1 < crit.size()) ? crit[k + 1] : crit.front() + 2.0 * kPi;
        double mid = 0.5 * (a0 + a1);
        candidates.push_back(support_touchpoint(mu, alpha, dir_of_angle(mid)).x);
    }
    return convex_hull(std::move(candidates));
}

}  // namespace subex

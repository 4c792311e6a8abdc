#pragma once

#include <cmath>
#include <numeric>
#include <variant>
#include <vector>

#include "subex/common.hpp"
#include "subex/rng.hpp"
#include "subex/scalar_law.hpp"

namespace subex {

// Discrete probability measure on R^d: atoms plus positive weights.
struct WeightedSample {
    std::vector<std::vector<double>> points;
    std::vector<double> weights;

    WeightedSample() = default;
    WeightedSample(std::vector<std::vector<double>> pts, std::vector<double> w)
        : points(std::move(pts)), weights(std::move(w)) {
        validate();
    }
    explicit WeightedSample(std::vector<std::vector<double>> pts) : points(std::move(pts)) {
        weights.assign(points.size(), 1.0 / double(points.size()));
        validate();
    }

    int dim() const { return points.empty() ? 0 : int(points.front().size()); }
    size_t size() const { return points.size(); }

    std::vector<double> barycenter() const {
        std::vector<double> b(dim(), 0.0);
        for (size_t i = 0; i < points.size(); ++i)
            for (int j = 0; j < dim(); ++j) b[j] += weights[i] * points[i][j];
        return b;
    }

    // Exact law of <xi, u> for xi distributed per this sample.
    ScalarLaw project(const std::vector<double>& u) const {
        require(int(u.size()) == dim(), "direction dimension mismatch");
        std::vector<double> vals(points.size());
        for (size_t i = 0; i < points.size(); ++i)
            vals[i] = std::inner_product(u.begin(), u.end(), points[i].begin(), 0.0);
        return ScalarLaw::empirical(std::move(vals), weights);
    }

    ScalarLaw project(Vec2 u) const { return project(std::vector<double>{u.x, u.y}); }

    Vec2 point2(size_t i) const {
        require(dim() == 2, "point2 requires a planar sample");
        return {points[i][0], points[i][1]};
    }

  private:
    void validate() {
        require(!points.empty(), "sample needs at least one point");
        require(points.size() == weights.size(), "points/weights size mismatch");
        size_t d = points.front().size();
        require(d >= 1, "sample dimension must be >= 1");
        double sum = 0.0;
        for (size_t i = 0; i < points.size(); ++i) {
            require(points[i].size() == d, "inconsistent point dimension");
            for (double c : points[i]) require(std::isfinite(c), "points must be finite");
            require(weights[i] > 0.0, "weights must be positive");
            sum += weights[i];
        }
        require(std::abs(sum - 1.0) <= 1e-12 * std::max(1.0, sum),
                "weights must sum to 1 within 1e-12");
        for (double& w : weights) w /= sum;
    }
};

// Analytic convex bodies with exact projection laws and uniform sampling.
namespace shape {

struct Polygon {
    std::vector<Vec2> vertices;  // CCW, strictly convex
};
struct Box {
    std::vector<double> center;
    std::vector<double> half_widths;
};
struct Ball {
    std::vector<double> center;
    double radius = 1.0;
};
struct Ellipse {
    Vec2 center;
    double mxx = 1.0, mxy = 0.0, myy = 1.0;  // shape matrix M, body {c + x : x' M^-1 x <= 1}
};
struct L1Ball {
    std::vector<double> center;
    double radius = 1.0;
};

}  // namespace shape

class ConvexShape {
  public:
    using Variant = std::variant<shape::Polygon, shape::Box, shape::Ball, shape::Ellipse,
                                 shape::L1Ball>;

    static ConvexShape polygon(std::vector<Vec2> vertices);
    static ConvexShape box(std::vector<double> center, std::vector<double> half_widths) {
        require(center.size() == half_widths.size() && !center.empty(), "box dim mismatch");
        for (double w : half_widths) require(w > 0.0, "box half width must be positive");
        return ConvexShape(shape::Box{std::move(center), std::move(half_widths)});
    }
    static ConvexShape ball(std::vector<double> center, double radius) {
        require(!center.empty() && radius > 0.0, "ball needs positive radius");
        return ConvexShape(shape::Ball{std::move(center), radius});
    }
    static ConvexShape ellipse(Vec2 center, double mxx, double mxy, double myy) {
        require(mxx > 0.0 && mxx * myy - mxy * mxy > 0.0, "ellipse matrix must be positive definite");
        return ConvexShape(shape::Ellipse{center, mxx, mxy, myy});
    }
    static ConvexShape l1ball(std::vector<double> center, double radius) {
        require(!center.empty() && radius > 0.0, "l1 ball needs positive radius");
        return ConvexShape(shape::L1Ball{std::move(center), radius});
    }

    const Variant& raw() const { return v_; }

    int dim() const {
        return std::visit(
            [](const auto& s) -> int {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, shape::Polygon>) return 2;
                else if constexpr (std::is_same_v<T, shape::Ellipse>) return 2;
                else if constexpr (std::is_same_v<T, shape::Ball>) return int(s.center.size());
                else if constexpr (std::is_same_v<T, shape::L1Ball>) return int(s.center.size());
                else return int(s.center.size());
            },
            v_);
    }

    double volume() const;
    std::vector<double> barycenter() const;
    Vec2 barycenter2() const {
        auto b = barycenter();
        require(b.size() == 2, "barycenter2 requires a planar shape");
        return {b[0], b[1]};
    }
    double support(const std::vector<double>& u) const;
    double support(Vec2 u) const { return support(std::vector<double>{u.x, u.y}); }

    // Exact law of <xi, u> for xi uniform on the shape.
    ScalarLaw project(const std::vector<double>& u) const;
    ScalarLaw project(Vec2 u) const { return project(std::vector<double>{u.x, u.y}); }

    WeightedSample sample_uniform(size_t n, std::uint64_t seed) const;

    // Planar outline for drawing and polygon algebra; k segments for smooth shapes.
    std::vector<Vec2> outline(int k = 256) const;

  private:
    explicit ConvexShape(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

// ---- implementation ----

namespace shape_detail {

inline double polygon_area(const std::vector<Vec2>& v) {
    double a = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        Vec2 p = v[i], q = v[(i + 1) % v.size()];
        a += cross(p, q);
    }
    return 0.5 * a;
}

inline Vec2 polygon_centroid(const std::vector<Vec2>& v) {
    double a = 0.0;
    Vec2 c{0.0, 0.0};
    for (size_t i = 0; i < v.size(); ++i) {
        Vec2 p = v[i], q = v[(i + 1) % v.size()];
        double w = cross(p, q);
        a += w;
        c += (p + q) * w;
    }
    return c * (1.0 / (3.0 * a));
}

// Chord length of a convex CCW polygon along the line <x, u> = s.
// Piecewise linear in s with breakpoints at projected vertices.
inline ScalarLaw polygon_projection_law(const std::vector<Vec2>& v, Vec2 u) {
    const size_t n = v.size();
    std::vector<double> proj(n);
    double diam = 0.0;
    for (size_t i = 0; i < n; ++i) proj[i] = dot(v[i], u);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) diam = std::max(diam, (v[i] - v[j]).norm());

    std::vector<double> breaks = proj;
    std::sort(breaks.begin(), breaks.end());
    const double tie = 1e-12 * std::max(diam, 1e-30);
    std::vector<double> merged;
    for (double s : breaks)
        if (merged.empty() || s - merged.back() > tie) merged.push_back(s);
    require(merged.size() >= 2, "degenerate polygon projection");

    // chord length at each breakpoint
    std::vector<double> chord(merged.size(), 0.0);
    for (size_t b = 0; b < merged.size(); ++b) {
        double s = merged[b];
        double ymin = kInf, ymax = -kInf;
        Vec2 t = perp(u);
        for (size_t i = 0; i < n; ++i) {
            size_t j = (i + 1) % n;
            double si = proj[i], sj = proj[j];
            if (std::abs(si - s) <= tie) {
                double y = dot(v[i], t);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
            if ((si < s - tie && sj > s + tie) || (sj < s - tie && si > s + tie)) {
                double w = (s - si) / (sj - si);
                double y = dot(v[i], t) * (1.0 - w) + dot(v[j], t) * w;
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
        chord[b] = (ymax > ymin) ? (ymax - ymin) : 0.0;
    }
    double area = std::abs(polygon_area(v));
    for (double& c : chord) c /= area;
    return ScalarLaw::piecewise_linear_density(merged, chord);
}

inline std::array<double, 4> ellipse_sqrt(double mxx, double mxy, double myy) {
    // principal square root of a 2x2 SPD matrix
    double det = mxx * myy - mxy * mxy;
    double s = std::sqrt(det);
    double t = std::sqrt(mxx + myy + 2.0 * s);
    return {(mxx + s) / t, mxy / t, mxy / t, (myy + s) / t};
}

}  // namespace shape_detail

inline ConvexShape ConvexShape::polygon(std::vector<Vec2> vertices) {
    require(vertices.size() >= 3, "polygon needs at least 3 vertices");
    double area = shape_detail::polygon_area(vertices);
    require(area > 0.0, "polygon must be CCW with positive area");
    return ConvexShape(shape::Polygon{std::move(vertices)});
}

inline double ConvexShape::volume() const {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shape::Polygon>) {
                return shape_detail::polygon_area(s.vertices);
            } else if constexpr (std::is_same_v<T, shape::Box>) {
                double v = 1.0;
                for (double w : s.half_widths) v *= 2.0 * w;
                return v;
            } else if constexpr (std::is_same_v<T, shape::Ball>) {
                int d = int(s.center.size());
                double kd = std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
                return kd * std::pow(s.radius, d);
            } else if constexpr (std::is_same_v<T, shape::Ellipse>) {
                return kPi * std::sqrt(s.mxx * s.myy - s.mxy * s.mxy);
            } else {
                int d = int(s.center.size());
                double f = 1.0;
                for (int i = 2; i <= d; ++i) f *= i;
                return std::pow(2.0 * s.radius, d) / f;
            }
        },
        v_);
}

inline std::vector<double> ConvexShape::barycenter() const {
    return std::visit(
        [](const auto& s) -> std::vector<double> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shape::Polygon>) {
                Vec2 c = shape_detail::polygon_centroid(s.vertices);
                return {c.x, c.y};
            } else if constexpr (std::is_same_v<T, shape::Ellipse>) {
                return {s.center.x, s.center.y};
            } else {
                return s.center;
            }
        },
        v_);
}

inline double ConvexShape::support(const std::vector<double>& u) const {
    require(int(u.size()) == dim(), "direction dimension mismatch");
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shape::Polygon>) {
                Vec2 d{u[0], u[1]};
                double h = -kInf;
                for (Vec2 p : s.vertices) h = std::max(h, dot(p, d));
                return h;
            } else if constexpr (std::is_same_v<T, shape::Box>) {
                double h = 0.0;
                for (size_t i = 0; i < u.size(); ++i)
                    h += s.center[i] * u[i] + s.half_widths[i] * std::abs(u[i]);
                return h;
            } else if constexpr (std::is_same_v<T, shape::Ball>) {
                double c = 0.0, n2 = 0.0;
                for (size_t i = 0; i < u.size(); ++i) {
                    c += s.center[i] * u[i];
                    n2 += u[i] * u[i];
                }
                return c + s.radius * std::sqrt(n2);
            } else if constexpr (std::is_same_v<T, shape::Ellipse>) {
                Vec2 d{u[0], u[1]};
                double q = s.mxx * d.x * d.x + 2.0 * s.mxy * d.x * d.y + s.myy * d.y * d.y;
                return dot(s.center, d) + std::sqrt(std::max(q, 0.0));
            } else {
                double c = 0.0, m = 0.0;
                for (size_t i = 0; i < u.size(); ++i) {
                    c += s.center[i] * u[i];
                    m = std::max(m, std::abs(u[i]));
                }
                return c + s.radius * m;
            }
        },
        v_);
}

inline ScalarLaw ConvexShape::project(const std::vector<double>& uraw) const {
    require(int(uraw.size()) == dim(), "direction dimension mismatch");
    double n2 = 0.0;
    for (double c : uraw) n2 += c * c;
    require(n2 > 0.0, "direction must be nonzero");
    std::vector<double> u = uraw;
    double inv = 1.0 / std::sqrt(n2);
    for (double& c : u) c *= inv;

    return std::visit(
        [&](const auto& s) -> ScalarLaw {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shape::Polygon>) {
                return shape_detail::polygon_projection_law(s.vertices, Vec2{u[0], u[1]});
            } else if constexpr (std::is_same_v<T, shape::Box>) {
                // sum of independent uniforms: iterated exact convolution
                double shift = 0.0;
                std::vector<double> widths;
                for (size_t i = 0; i < u.size(); ++i) {
                    shift += s.center[i] * u[i];
                    double a = std::abs(u[i]) * s.half_widths[i];
                    if (a > 1e-14) widths.push_back(a);
                }
                if (widths.empty()) return ScalarLaw::point_mass(shift);
                std::sort(widths.begin(), widths.end(), std::greater<double>());
                ScalarLaw law = ScalarLaw::uniform(-widths[0], widths[0]);
                for (size_t i = 1; i < widths.size(); ++i)
                    law = convolve_with_uniform(law, widths[i]);
                return law.affine(1.0, shift);
            } else if constexpr (std::is_same_v<T, shape::Ball>) {
                double c = 0.0;
                for (size_t i = 0; i < u.size(); ++i) c += s.center[i] * u[i];
                return ScalarLaw::ball_marginal(int(s.center.size()), s.radius, c);
            } else if constexpr (std::is_same_v<T, shape::Ellipse>) {
                Vec2 d{u[0], u[1]};
                double q = s.mxx * d.x * d.x + 2.0 * s.mxy * d.x * d.y + s.myy * d.y * d.y;
                return ScalarLaw::ball_marginal(2, std::sqrt(std::max(q, 1e-300)),
                                                dot(s.center, d));
            } else {
                require(s.center.size() == 2, "exact l1-ball projection is planar only");
                Vec2 c{s.center[0], s.center[1]};
                double r = s.radius;
                std::vector<Vec2> verts = {c + Vec2{r, 0}, c + Vec2{0, r}, c + Vec2{-r, 0},
                                           c + Vec2{0, -r}};
                return shape_detail::polygon_projection_law(verts, Vec2{u[0], u[1]});
            }
        },
        v_);
}

inline WeightedSample ConvexShape::sample_uniform(size_t n, std::uint64_t seed) const {
    require(n >= 1, "sample size must be >= 1");
    Rng rng(seed, 0x5a5a5a5aULL);
    std::vector<std::vector<double>> pts;
    pts.reserve(n);

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shape::Polygon>) {
                // fan triangulation with area-proportional triangle choice
                const auto& v = s.vertices;
                std::vector<double> acc;
                double total = 0.0;
                for (size_t i = 1; i + 1 < v.size(); ++i) {
                    total += 0.5 * std::abs(cross(v[i] - v[0], v[i + 1] - v[0]));
                    acc.push_back(total);
                }
                for (size_t k = 0; k < n; ++k) {
                    double r = rng.uniform01() * total;
                    size_t t = size_t(std::lower_bound(acc.begin(), acc.end(), r) - acc.begin());
                    t = std::min(t, acc.size() - 1);
                    Vec2 A = v[0], B = v[t + 1], C = v[t + 2];
                    double r1 = std::sqrt(rng.uniform01()), r2 = rng.uniform01();
                    Vec2 p = A * (1.0 - r1) + B * (r1 * (1.0 - r2)) + C * (r1 * r2);
                    pts.push_back({p.x, p.y});
                }
            } else if constexpr (std::is_same_v<T, shape::Box>) {
                for (size_t k = 0; k < n; ++k) {
                    std::vector<double> p(s.center.size());
                    for (size_t i = 0; i < p.size(); ++i)
                        p[i] = s.center[i] + rng.uniform(-s.half_widths[i], s.half_widths[i]);
                    pts.push_back(std::move(p));
                }
            } else if constexpr (std::is_same_v<T, shape::Ball>) {
                int d = int(s.center.size());
                for (size_t k = 0; k < n; ++k) {
                    std::vector<double> g(d);
                    double n2 = 0.0;
                    for (int i = 0; i < d; ++i) {
                        g[i] = rng.normal();
                        n2 += g[i] * g[i];
                    }
                    double r = s.radius * std::pow(rng.uniform01(), 1.0 / d) / std::sqrt(n2);
                    for (int i = 0; i < d; ++i) g[i] = s.center[i] + r * g[i];
                    pts.push_back(std::move(g));
                }
            } else if constexpr (std::is_same_v<T, shape::Ellipse>) {
                auto A = shape_detail::ellipse_sqrt(s.mxx, s.mxy, s.myy);
                for (size_t k = 0; k < n; ++k) {
                    double gx = rng.normal(), gy = rng.normal();
                    double nn = std::sqrt(gx * gx + gy * gy);
                    double r = std::sqrt(rng.uniform01()) / nn;
                    double zx = r * gx, zy = r * gy;
                    pts.push_back({s.center.x + A[0] * zx + A[1] * zy,
                                   s.center.y + A[2] * zx + A[3] * zy});
                }
            } else {
                // Dirichlet construction: exponential spacings with a slack term
                int d = int(s.center.size());
                for (size_t k = 0; k < n; ++k) {
                    std::vector<double> e(d + 1);
                    double sum = 0.0;
                    for (int i = 0; i <= d; ++i) {
                        e[i] = -std::log(std::max(rng.uniform01(), 1e-300));
                        sum += e[i];
                    }
                    std::vector<double> p(d);
                    for (int i = 0; i < d; ++i) {
                        double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
                        p[i] = s.center[i] + sign * s.radius * e[i] / sum;
                    }
                    pts.push_back(std::move(p));
                }
            }
        },
        v_);

    return WeightedSample(std::move(pts));
}

inline std::vector<Vec2> ConvexShape::outline(int k) const {
    require(dim() == 2, "outline requires a planar shape");
    return std::visit(
        [&](const auto& s) -> std::vector<Vec2> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shape::Polygon>) {
                return s.vertices;
            } else if constexpr (std::is_same_v<T, shape::Box>) {
                Vec2 c{s.center[0], s.center[1]};
                double wx = s.half_widths[0], wy = s.half_widths[1];
                return {c + Vec2{wx, wy}, c + Vec2{-wx, wy}, c + Vec2{-wx, -wy},
                        c + Vec2{wx, -wy}};
            } else if constexpr (std::is_same_v<T, shape::Ball>) {
                Vec2 c{s.center[0], s.center[1]};
                std::vector<Vec2> out;
                for (int i = 0; i < k; ++i)
                    out.push_back(c + s.radius * dir_of_angle(2.0 * kPi * i / k));
                return out;
            } else if constexpr (std::is_same_v<T, shape::Ellipse>) {
                auto A = shape_detail::ellipse_sqrt(s.mxx, s.mxy, s.myy);
                std::vector<Vec2> out;
                for (int i = 0; i < k; ++i) {
                    Vec2 z = dir_of_angle(2.0 * kPi * i / k);
                    out.push_back(s.center +
                                  Vec2{A[0] * z.x + A[1] * z.y, A[2] * z.x + A[3] * z.y});
                }
                return out;
            } else {
                Vec2 c{s.center[0], s.center[1]};
                double r = s.radius;
                return {c + Vec2{r, 0}, c + Vec2{0, r}, c + Vec2{-r, 0}, c + Vec2{0, -r}};
            }
        },
        v_);
}

}  // namespace subex

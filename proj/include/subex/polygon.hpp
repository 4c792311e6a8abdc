#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "subex/common.hpp"

namespace subex {

// Convex polygon in CCW order. Degenerate forms are first-class values: the
// empty polygon, a single point and a segment all occur as depth regions or
// bodies of collinear measures, and distance/containment stay defined.
class Polygon2 {
  public:
    Polygon2() = default;
    explicit Polygon2(std::vector<Vec2> verts) : v_(std::move(verts)) {}

    static Polygon2 empty() { return Polygon2(); }
    static Polygon2 point(Vec2 p) { return Polygon2({p}); }

    bool is_empty() const { return v_.empty(); }
    size_t size() const { return v_.size(); }
    const std::vector<Vec2>& vertices() const { return v_; }
    Vec2 operator[](size_t i) const { return v_[i]; }

    double area() const {
        if (v_.size() < 3) return 0.0;
        double a = 0.0;
        for (size_t i = 0; i < v_.size(); ++i) a += cross(v_[i], v_[(i + 1) % v_.size()]);
        return 0.5 * a;
    }

    Vec2 centroid() const {
        require(!v_.empty(), "centroid of empty polygon");
        if (v_.size() < 3 || area() < 1e-300) {
            Vec2 c{0, 0};
            for (Vec2 p : v_) c += p;
            return c * (1.0 / double(v_.size()));
        }
        double a = 0.0;
        Vec2 c{0, 0};
        for (size_t i = 0; i < v_.size(); ++i) {
            Vec2 p = v_[i], q = v_[(i + 1) % v_.size()];
            double w = cross(p, q);
            a += w;
            c += (p + q) * w;
        }
        return c * (1.0 / (3.0 * a));
    }

    double diameter() const {
        double d = 0.0;
        for (size_t i = 0; i < v_.size(); ++i)
            for (size_t j = i + 1; j < v_.size(); ++j)
                d = std::max(d, (v_[i] - v_[j]).norm());
        return d;
    }

    double coordinate_scale() const {
        double s = 0.0;
        for (Vec2 p : v_) s = std::max({s, std::abs(p.x), std::abs(p.y)});
        return std::max(s, 1e-12);
    }

    double support(Vec2 u) const {
        require(!v_.empty(), "support of empty polygon");
        double h = -kInf;
        for (Vec2 p : v_) h = std::max(h, dot(p, u));
        return h;
    }

    Vec2 support_point(Vec2 u) const {
        require(!v_.empty(), "support of empty polygon");
        size_t best = 0;
        double h = dot(v_[0], u);
        for (size_t i = 1; i < v_.size(); ++i) {
            double s = dot(v_[i], u);
            if (s > h) {
                h = s;
                best = i;
            }
        }
        return v_[best];
    }

    bool contains_point(Vec2 p, double tol) const {
        if (v_.empty()) return false;
        if (v_.size() == 1) return (p - v_[0]).norm() <= tol;
        if (v_.size() == 2) return distance_to(p) <= tol;
        for (size_t i = 0; i < v_.size(); ++i) {
            Vec2 a = v_[i], b = v_[(i + 1) % v_.size()];
            if (cross(b - a, p - a) < -tol * (b - a).norm()) return false;
        }
        return true;
    }

    // Euclidean distance from p to the polygon (0 if inside).
    double distance_to(Vec2 p) const {
        require(!v_.empty(), "distance to empty polygon");
        if (v_.size() == 1) return (p - v_[0]).norm();
        if (v_.size() >= 3 && contains_point(p, 0.0)) return 0.0;
        double best = kInf;
        size_t edges = v_.size() == 2 ? 1 : v_.size();
        for (size_t i = 0; i < edges; ++i) {
            Vec2 a = v_[i], b = v_[(i + 1) % v_.size()];
            Vec2 ab = b - a;
            double len2 = ab.norm2();
            double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
            best = std::min(best, (p - (a + ab * t)).norm());
        }
        return best;
    }

    Polygon2 translated(Vec2 d) const {
        std::vector<Vec2> out = v_;
        for (Vec2& p : out) p += d;
        return Polygon2(std::move(out));
    }

    Polygon2 scaled(double c, Vec2 about = {0, 0}) const {
        std::vector<Vec2> out = v_;
        for (Vec2& p : out) p = about + (p - about) * c;
        if (c < 0.0) std::reverse(out.begin(), out.end());
        return Polygon2(std::move(out));
    }

    // x -> A x + b with A = [[a00, a01], [a10, a11]]
    Polygon2 affine(double a00, double a01, double a10, double a11, Vec2 b) const;

  private:
    std::vector<Vec2> v_;
};

// Andrew monotone chain; collinear points merged, canonical CCW order
// starting at the lexicographically smallest vertex.
inline Polygon2 convex_hull(std::vector<Vec2> pts, double rel_tol = 1e-12) {
    if (pts.empty()) return Polygon2::empty();
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    double scale = 1e-12;
    for (Vec2 p : pts) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    const double eps = rel_tol * scale * scale;
    // drop near-duplicates
    {
        std::vector<Vec2> kept;
        for (Vec2 p : pts) {
            bool dup = false;
            for (Vec2 q : kept)
                if ((p - q).norm() <= rel_tol * scale) {
                    dup = true;
                    break;
                }
            if (!dup) kept.push_back(p);
        }
        pts = std::move(kept);
        std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
            return a.x < b.x || (a.x == b.x && a.y < b.y);
        });
    }
    if (pts.size() <= 2) return Polygon2(std::move(pts));

    std::vector<Vec2> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps) --k;
        h[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() == 2 && (h[0] - h[1]).norm() <= rel_tol * scale) h.resize(1);
    return Polygon2(std::move(h));
}

inline Polygon2 Polygon2::affine(double a00, double a01, double a10, double a11, Vec2 b) const {
    std::vector<Vec2> out;
    out.reserve(v_.size());
    for (Vec2 p : v_)
        out.push_back({a00 * p.x + a01 * p.y + b.x, a10 * p.x + a11 * p.y + b.y});
    return convex_hull(std::move(out));
}

// Half-plane {x : <x, n> <= c} with unit outward normal.
struct Halfspace {
    Vec2 n;
    double c = 0.0;

    Halfspace() = default;
    Halfspace(Vec2 normal, double offset) : n(normalized(normal)), c(offset) {}
};

struct ClipResult {
    Polygon2 poly;
    bool empty = false;
    bool unbounded = false;
};

// Single-halfspace Sutherland-Hodgman clip.
inline Polygon2 clip(const Polygon2& P, const Halfspace& h, double keep_tol = 0.0) {
    const auto& v = P.vertices();
    if (v.empty()) return P;
    if (v.size() == 1) return (dot(v[0], h.n) <= h.c + keep_tol) ? P : Polygon2::empty();
    std::vector<Vec2> out;
    size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 a = v[i], b = v[(i + 1) % n];
        double da = dot(a, h.n) - h.c, db = dot(b, h.n) - h.c;
        bool ina = da <= keep_tol, inb = db <= keep_tol;
        if (ina) out.push_back(a);
        if (ina != inb) {
            double t = da / (da - db);
            out.push_back(a + (b - a) * t);
        }
        if (n == 2) break;  // open segment: single edge
    }
    return convex_hull(std::move(out));
}

namespace geo_detail {

struct TaggedPolygon {
    std::vector<Vec2> pts;
    std::vector<int> edge;  // edge[i] labels the edge pts[i] -> pts[i+1]
};

inline bool clip_tagged(TaggedPolygon& poly, Vec2 n, double c, int id, double keep) {
    const size_t m = poly.pts.size();
    if (m == 0) return false;
    TaggedPolygon out;
    for (size_t i = 0; i < m; ++i) {
        Vec2 a = poly.pts[i], b = poly.pts[(i + 1) % m];
        int ea = poly.edge[i];
        double da = dot(a, n) - c, db = dot(b, n) - c;
        bool ina = da <= keep, inb = db <= keep;
        if (ina) {
            out.pts.push_back(a);
            out.edge.push_back(ea);
        }
        if (ina != inb) {
            double t = da / (da - db);
            out.pts.push_back(a + (b - a) * t);
            out.edge.push_back(ina ? id : ea);
        }
    }
    // fix edge labels: when leaving the halfspace the new edge belongs to id
    // (handled above); drop exact duplicates
    TaggedPolygon clean;
    for (size_t i = 0; i < out.pts.size(); ++i) {
        size_t j = (i + 1) % out.pts.size();
        if (out.pts.size() > 1 && (out.pts[i] - out.pts[j]).norm() == 0.0 &&
            i + 1 < out.pts.size())
            continue;
        clean.pts.push_back(out.pts[i]);
        clean.edge.push_back(out.edge[i]);
    }
    poly = std::move(clean);
    return !poly.pts.empty();
}

inline std::optional<Vec2> line_intersection(Vec2 n1, double c1, Vec2 n2, double c2) {
    double det = cross(n1, n2);
    if (std::abs(det) < 1e-14) return std::nullopt;
    return Vec2{(c1 * n2.y - c2 * n1.y) / det, (n1.x * c2 - n2.x * c1) / det};
}

}  // namespace geo_detail

// Exact intersection of half-planes by incremental clipping of a generous
// box, with edge provenance: every final vertex is recomputed as the exact
// intersection of its two defining constraint lines. Emptiness and
// unboundedness are detected explicitly.
inline ClipResult halfspace_intersection(const std::vector<Halfspace>& hs) {
    ClipResult result;
    if (hs.size() < 2) {
        result.unbounded = true;
        return result;
    }
    // unbounded iff some open half-circle of normals is empty
    std::vector<double> angles;
    angles.reserve(hs.size());
    double cmax = 0.0;
    for (const auto& h : hs) {
        angles.push_back(std::atan2(h.n.y, h.n.x));
        cmax = std::max(cmax, std::abs(h.c));
    }
    std::sort(angles.begin(), angles.end());
    double gap = angles.front() + 2.0 * kPi - angles.back();
    for (size_t i = 0; i + 1 < angles.size(); ++i)
        gap = std::max(gap, angles[i + 1] - angles[i]);
    if (gap >= kPi - 1e-9) {
        result.unbounded = true;
        return result;
    }

    double R = 4.0 * (cmax + 1.0);
    const double keep = 1e-12 * (cmax + 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        geo_detail::TaggedPolygon poly;
        poly.pts = {{R, R}, {-R, R}, {-R, -R}, {R, -R}};
        poly.edge = {-1, -2, -3, -4};
        bool alive = true;
        for (size_t j = 0; j < hs.size() && alive; ++j)
            alive = geo_detail::clip_tagged(poly, hs[j].n, hs[j].c, int(j), keep);
        if (!alive || poly.pts.size() < 1) {
            result.empty = true;
            return result;
        }
        bool touches_box = false;
        for (int e : poly.edge)
            if (e < 0) touches_box = true;
        if (touches_box) {
            R *= 64.0;
            continue;
        }
        // polish: recompute each vertex from its two constraint lines
        std::vector<Vec2> polished;
        const size_t m = poly.pts.size();
        for (size_t i = 0; i < m; ++i) {
            int e_prev = poly.edge[(i + m - 1) % m];
            int e_this = poly.edge[i];
            if (e_prev == e_this) continue;  // redundant vertex on one line
            auto p = geo_detail::line_intersection(hs[e_prev].n, hs[e_prev].c,
                                                   hs[e_this].n, hs[e_this].c);
            polished.push_back(p ? *p : poly.pts[i]);
        }
        if (polished.empty()) polished = poly.pts;
        result.poly = convex_hull(std::move(polished));
        result.empty = result.poly.is_empty();
        return result;
    }
    result.unbounded = true;
    return result;
}

// Exact Hausdorff distance between convex polygons (directed distances are
// realized at vertices of the source polygon).
inline double hausdorff(const Polygon2& P, const Polygon2& Q) {
    require(!P.is_empty() && !Q.is_empty(), "hausdorff of empty polygon");
    double d = 0.0;
    for (Vec2 p : P.vertices()) d = std::max(d, Q.distance_to(p));
    for (Vec2 q : Q.vertices()) d = std::max(d, P.distance_to(q));
    return d;
}

// Exact Minkowski sum: edge merge for full polygons, pairwise sums + hull for
// degenerate operands.
inline Polygon2 minkowski_sum(const Polygon2& P, const Polygon2& Q) {
    require(!P.is_empty() && !Q.is_empty(), "minkowski sum of empty polygon");
    if (P.size() < 3 || Q.size() < 3) {
        std::vector<Vec2> sums;
        for (Vec2 p : P.vertices())
            for (Vec2 q : Q.vertices()) sums.push_back(p + q);
        return convex_hull(std::move(sums));
    }
    auto bottom = [](const std::vector<Vec2>& v) {
        size_t b = 0;
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i].y < v[b].y || (v[i].y == v[b].y && v[i].x < v[b].x)) b = i;
        return b;
    };
    const auto& a = P.vertices();
    const auto& b = Q.vertices();
    size_t ia = bottom(a), ib = bottom(b);
    size_t na = a.size(), nb = b.size();
    std::vector<Vec2> out;
    out.reserve(na + nb);
    size_t ca = 0, cb = 0;
    Vec2 cur = a[ia] + b[ib];
    while (ca < na || cb < nb) {
        out.push_back(cur);
        Vec2 ea = a[(ia + 1) % na] - a[ia % na];
        Vec2 eb = b[(ib + 1) % nb] - b[ib % nb];
        double cr = cross(ea, eb);
        if (cb >= nb || (ca < na && cr > 0.0)) {
            cur += ea;
            ++ia;
            ++ca;
        } else if (ca >= na || cr < 0.0) {
            cur += eb;
            ++ib;
            ++cb;
        } else {
            cur += ea + eb;
            ++ia;
            ++ca;
            ++ib;
            ++cb;
        }
    }
    return convex_hull(std::move(out));
}

// Polar body {u : <x, u> <= 1 for all x in P}; requires 0 strictly interior.
// Vertices of P map to edges of the polar and vice versa.
inline Polygon2 polar(const Polygon2& P) {
    require(P.size() >= 3, "polar needs a full-dimensional polygon");
    double scale = P.coordinate_scale();
    require(P.contains_point({0.0, 0.0}, -1e-12 * scale),
            "polar requires the origin strictly inside");
    const auto& v = P.vertices();
    std::vector<Vec2> w;
    for (size_t i = 0; i < v.size(); ++i) {
        Vec2 a = v[i], b = v[(i + 1) % v.size()];
        Vec2 e = b - a;
        Vec2 n{e.y, -e.x};  // outward for CCW
        double c = dot(n, a);
        require(c > 1e-14 * scale, "polar requires the origin strictly inside");
        w.push_back(n * (1.0 / c));
    }
    return convex_hull(std::move(w));
}

// True iff every vertex of Q satisfies every edge inequality of P within tol.
inline bool contains(const Polygon2& P, const Polygon2& Q, double tol) {
    require(!P.is_empty() && !Q.is_empty(), "containment of empty polygon");
    if (P.size() < 3) {
        for (Vec2 q : Q.vertices())
            if (P.distance_to(q) > tol) return false;
        return true;
    }
    const auto& v = P.vertices();
    for (size_t i = 0; i < v.size(); ++i) {
        Vec2 a = v[i], b = v[(i + 1) % v.size()];
        Vec2 e = b - a;
        double len = e.norm();
        if (len <= 0.0) continue;
        Vec2 n{e.y / len, -e.x / len};
        double c = dot(n, a);
        for (Vec2 q : Q.vertices())
            if (dot(n, q) > c + tol) return false;
    }
    return true;
}

}  // namespace subex

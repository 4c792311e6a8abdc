#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace subex {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double c) const { return {x * c, y * c}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double c, Vec2 v) { return v * c; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
// 90-degree counterclockwise rotation.
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

inline Vec2 normalized(Vec2 v) {
    double n = v.norm();
    if (n <= 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return v * (1.0 / n);
}

inline Vec2 dir_of_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

// ---- small polynomial utilities (coefficients c[0] + c[1]x + ...) ----

inline double poly_eval(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

inline std::vector<double> poly_antiderivative(const std::vector<double>& c) {
    std::vector<double> a(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) a[i + 1] = c[i] / double(i + 1);
    return a;
}

// Rewrite p(x) as q(y) with y = x - delta (i.e. q(y) = p(y + delta)).
inline std::vector<double> poly_recenter(const std::vector<double>& c, double delta) {
    std::vector<double> q(c.size(), 0.0);
    // Horner on shifted variable: repeatedly multiply by (y + delta).
    for (size_t i = c.size(); i-- > 0;) {
        for (size_t j = q.size() - 1; j > 0; --j) q[j] = q[j - 1] + q[j] * delta;
        q[0] = q[0] * delta + c[i];
    }
    return q;
}

inline std::vector<double> poly_scale(std::vector<double> c, double s) {
    for (double& v : c) v *= s;
    return c;
}

// ---- Gauss-Legendre nodes on [-1, 1], cached per order ----

struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = x;
        gl.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    auto [pos, ok] = cache.emplace(n, std::move(gl));
    return pos->second;
}

template <typename F>
double integrate_gl(F&& f, double a, double b, int n) {
    if (a == b) return 0.0;
    const GaussLegendre& gl = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < int(gl.nodes.size()); ++i)
        s += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return s * half;
}

// Adaptive Simpson with absolute tolerance.
namespace detail {
template <typename F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double err = left + right - whole;
    if (depth <= 0 || std::abs(err) < 15.0 * tol)
        return left + right + err / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-11, int max_depth = 40) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace subex

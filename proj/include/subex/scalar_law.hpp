#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "subex/common.hpp"

namespace subex {

// One-dimensional law with exact quantile, CDF and quantile-integral queries.
//
// A law is stored as an affine + max-power wrapper around one of three cores:
//   Empirical        atoms with positive weights summing to one
//   PiecewisePoly    piecewise-polynomial density on a compact interval
//   BallMarginal     marginal of the uniform law on a unit ball in R^dim
//
// The represented variable is  shift + scale * max(B_1, ..., B_m)  where the
// B_i are i.i.d. copies of the core variable. The max of m copies only
// reparametrises the quantile function (q'_t = q_{t^{1/m}}), which keeps all
// integral queries exact for atomic cores.
//
// Quantile convention: inf-form, q_t = inf{ s : P(X <= s) >= t }.

namespace law_detail {

struct EmpiricalCore {
    std::vector<double> values;   // strictly increasing
    std::vector<double> weights;  // positive, sum exactly 1 after normalization
    std::vector<double> cum;      // cum[k] = w_0 + ... + w_k, cum.back() == 1
};

struct PolyPiece {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> coeffs;   // density in local coordinate (x - lo)
    std::vector<double> antider;  // antiderivative of coeffs, antider(0) = 0
    double mass_lo = 0.0;         // CDF at lo
    double mass = 0.0;            // integral of density over the piece
};

struct PiecewisePolyCore {
    std::vector<PolyPiece> pieces;  // contiguous, increasing
};

struct BallCore {
    int dim = 2;        // support [-1,1], density ~ (1 - x^2)^((dim-1)/2)
    double total = 0.0; // normalizer: integral of (1-x^2)^k over [-1,1]
};

// Antiderivative of (1 - s^2)^k, valid for integer and half-integer k >= -1/2.
inline double ball_antider(double k, double x) {
    if (k < -0.25) return std::asin(std::clamp(x, -1.0, 1.0));
    if (k < 0.25) return x;
    double x2 = std::clamp(1.0 - x * x, 0.0, 1.0);
    return (x * std::pow(x2, k) + 2.0 * k * ball_antider(k - 1.0, x)) / (2.0 * k + 1.0);
}

}  // namespace law_detail

class ScalarLaw {
    using EmpiricalCore = law_detail::EmpiricalCore;
    using PiecewisePolyCore = law_detail::PiecewisePolyCore;
    using BallCore = law_detail::BallCore;
    using PolyPiece = law_detail::PolyPiece;

  public:
    // ---- factories ----

    static ScalarLaw empirical(std::vector<double> values, std::vector<double> weights) {
        require(values.size() == weights.size() && !values.empty(),
                "empirical law needs matching nonempty values/weights");
        double sum = 0.0;
        for (size_t i = 0; i < values.size(); ++i) {
            require(std::isfinite(values[i]), "empirical value must be finite");
            require(weights[i] > 0.0, "empirical weight must be positive");
            sum += weights[i];
        }
        require(std::abs(sum - 1.0) <= 1e-12 * std::max(1.0, sum),
                "empirical weights must sum to 1 within 1e-12");
        std::vector<size_t> idx(values.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](size_t a, size_t b) { return values[a] < values[b]; });
        EmpiricalCore core;
        for (size_t i : idx) {
            double w = weights[i] / sum;
            if (!core.values.empty() && values[i] == core.values.back())
                core.weights.back() += w;  // merge duplicate atoms
            else {
                core.values.push_back(values[i]);
                core.weights.push_back(w);
            }
        }
        core.cum.resize(core.weights.size());
        double c = 0.0;
        for (size_t k = 0; k < core.weights.size(); ++k) {
            c += core.weights[k];
            core.cum[k] = c;
        }
        core.cum.back() = 1.0;
        ScalarLaw law;
        law.core_ = std::move(core);
        return law;
    }

    static ScalarLaw empirical(std::vector<double> values) {
        std::vector<double> w(values.size(), 1.0 / double(values.size()));
        return empirical(std::move(values), std::move(w));
    }

    static ScalarLaw point_mass(double c) { return empirical({c}, {1.0}); }

    static ScalarLaw uniform(double lo, double hi) {
        require(hi > lo, "uniform law needs lo < hi");
        return piecewise_poly({lo, hi}, {{1.0 / (hi - lo)}});
    }

    // Continuous piecewise-linear density given by its values at breakpoints.
    static ScalarLaw piecewise_linear_density(const std::vector<double>& breaks,
                                              const std::vector<double>& density) {
        require(breaks.size() >= 2 && breaks.size() == density.size(),
                "piecewise density needs >= 2 breakpoints with one value each");
        std::vector<std::vector<double>> coeffs;
        for (size_t j = 0; j + 1 < breaks.size(); ++j) {
            require(breaks[j + 1] > breaks[j], "breakpoints must increase");
            double len = breaks[j + 1] - breaks[j];
            coeffs.push_back({density[j], (density[j + 1] - density[j]) / len});
        }
        return piecewise_poly(breaks, coeffs, /*validate_mass=*/true);
    }

    // Raw piecewise-polynomial density; coefficients are in the local
    // coordinate (x - lo_j) of each piece.
    static ScalarLaw piecewise_poly(const std::vector<double>& breaks,
                                    std::vector<std::vector<double>> coeffs,
                                    bool validate_mass = false) {
        require(breaks.size() >= 2 && coeffs.size() + 1 == breaks.size(),
                "piecewise poly needs one coefficient set per interval");
        PiecewisePolyCore core;
        double mass = 0.0;
        for (size_t j = 0; j + 1 < breaks.size(); ++j) {
            PolyPiece p;
            p.lo = breaks[j];
            p.hi = breaks[j + 1];
            require(p.hi > p.lo, "breakpoints must increase");
            p.coeffs = std::move(coeffs[j]);
            p.antider = poly_antiderivative(p.coeffs);
            p.mass = poly_eval(p.antider, p.hi - p.lo);
            p.mass_lo = mass;
            double len = p.hi - p.lo;
            for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
                require(poly_eval(p.coeffs, t * len) >= -1e-9,
                        "density must be nonnegative");
            mass += p.mass;
            core.pieces.push_back(std::move(p));
        }
        require(mass > 0.0, "density must have positive mass");
        if (validate_mass)
            require(std::abs(mass - 1.0) <= 1e-10, "density must integrate to 1 within 1e-10");
        // Normalize exactly.
        double inv = 1.0 / mass;
        double acc = 0.0;
        for (auto& p : core.pieces) {
            p.coeffs = poly_scale(p.coeffs, inv);
            p.antider = poly_scale(p.antider, inv);
            p.mass *= inv;
            p.mass_lo = acc;
            acc += p.mass;
        }
        ScalarLaw law;
        law.core_ = std::move(core);
        return law;
    }

    // Marginal of the uniform distribution on a Euclidean ball.
    static ScalarLaw ball_marginal(int dim, double radius = 1.0, double center = 0.0) {
        require(dim >= 1, "ball dimension must be >= 1");
        require(radius > 0.0, "ball radius must be positive");
        BallCore core;
        core.dim = dim;
        double k = 0.5 * (dim - 1);
        core.total = law_detail::ball_antider(k, 1.0) - law_detail::ball_antider(k, -1.0);
        ScalarLaw law;
        law.core_ = core;
        law.scale_ = radius;
        law.shift_ = center;
        return law;
    }

    // ---- wrappers ----

    ScalarLaw affine(double scale, double shift) const {
        require(scale > 0.0, "affine scale must be positive");
        ScalarLaw law = *this;
        law.scale_ *= scale;
        law.shift_ = law.shift_ * scale + shift;
        return law;
    }

    // Law of the maximum of m independent copies.
    ScalarLaw max_of(long m) const {
        require(m >= 1, "max extension needs m >= 1");
        ScalarLaw law = *this;
        law.maxpow_ *= m;
        return law;
    }

    long max_power() const { return maxpow_; }
    bool is_atomic() const { return std::holds_alternative<EmpiricalCore>(core_); }
    bool is_plain_empirical() const { return is_atomic() && maxpow_ == 1; }

    // Atom values and probabilities with affine and max-power baked in.
    std::vector<std::pair<double, double>> atoms() const {
        const auto* e = std::get_if<EmpiricalCore>(&core_);
        require(e != nullptr, "atoms() requires an atomic law");
        std::vector<std::pair<double, double>> out;
        double prev = 0.0;
        for (size_t k = 0; k < e->values.size(); ++k) {
            double c = ipow(e->cum[k], maxpow_);
            out.emplace_back(shift_ + scale_ * e->values[k], std::max(c - prev, 1e-300));
            prev = c;
        }
        return out;
    }

    // Bake affine and max-power into a plain empirical law (atomic cores only).
    ScalarLaw as_empirical() const {
        std::vector<double> vals, w;
        for (auto [v, p] : atoms()) {
            vals.push_back(v);
            w.push_back(p);
        }
        return empirical(std::move(vals), std::move(w));
    }

    // ---- queries ----

    double quantile(double t) const {
        require(t > 0.0 && t < 1.0, "quantile level must lie in (0,1)");
        return shift_ + scale_ * core_quantile(root_m(t));
    }

    double cdf(double s) const {
        require(std::isfinite(s), "cdf argument must be finite");
        return ipow(core_cdf((s - shift_) / scale_), maxpow_);
    }

    // Exact integral of the quantile function over (a, b).
    double quantile_integral(double a, double b) const {
        require(a >= 0.0 && b <= 1.0 && a < b, "quantile_integral needs 0 <= a < b <= 1");
        double ca = root_m(a), cb = root_m(b);
        return shift_ * (b - a) + scale_ * double(maxpow_) * core_qpi(ca, cb, double(maxpow_ - 1));
    }

    // Integral of q_s * s^pow over (a, b); pow is any real >= 0.
    double quantile_power_integral(double a, double b, double pow) const {
        require(a >= 0.0 && b <= 1.0 && a < b && pow >= 0.0,
                "quantile_power_integral needs 0 <= a < b <= 1 and pow >= 0");
        double shift_term = shift_ * (std::pow(b, pow + 1.0) - std::pow(a, pow + 1.0)) / (pow + 1.0);
        double m = double(maxpow_);
        return shift_term + scale_ * m * core_qpi(root_m(a), root_m(b), m * (pow + 1.0) - 1.0);
    }

    double mean() const { return quantile_integral(0.0, 1.0); }

    // (1/alpha) * integral of q over (1-alpha, 1); the mean of the top tail.
    double tail_average(double alpha) const {
        require(alpha > 0.0 && alpha <= 1.0, "tail level must lie in (0,1]");
        return quantile_integral(1.0 - alpha, 1.0) / alpha;
    }

    // E(X - x)_+, exact via the quantile integral.
    double upper_partial(double x) const {
        double t = cdf(x);
        if (t >= 1.0) return 0.0;
        return quantile_integral(t, 1.0) - x * (1.0 - t);
    }

    // E(X - x)_+^p; exact for atomic laws, adaptive quadrature otherwise.
    double upper_partial_pow(double x, double p) const {
        if (p == 1.0) return upper_partial(x);
        if (const auto* e = std::get_if<EmpiricalCore>(&core_)) {
            double s = 0.0, prev = 0.0;
            for (size_t k = 0; k < e->values.size(); ++k) {
                double c = ipow(e->cum[k], maxpow_);
                double v = shift_ + scale_ * e->values[k];
                if (v > x) s += std::pow(v - x, p) * (c - prev);
                prev = c;
            }
            return s;
        }
        double y = (x - shift_) / scale_;
        auto [lo, hi] = core_support();
        if (y >= hi) return 0.0;
        y = std::max(y, lo);
        auto f = [&](double u) {
            double v = shift_ + scale_ * u - x;
            if (v <= 0.0) return 0.0;
            return std::pow(v, p) * weighted_density(u);
        };
        return integrate_adaptive(f, y, hi, 1e-12 * std::max(1.0, std::pow(scale_, p)));
    }

    // E g(X); exact for atomic laws, adaptive quadrature otherwise.
    double expectation_of(const std::function<double(double)>& g) const {
        if (const auto* e = std::get_if<EmpiricalCore>(&core_)) {
            double s = 0.0, prev = 0.0;
            for (size_t k = 0; k < e->values.size(); ++k) {
                double c = ipow(e->cum[k], maxpow_);
                s += g(shift_ + scale_ * e->values[k]) * (c - prev);
                prev = c;
            }
            return s;
        }
        auto [lo, hi] = core_support();
        auto f = [&](double u) { return g(shift_ + scale_ * u) * weighted_density(u); };
        return integrate_adaptive(f, lo, hi, 1e-11);
    }

    double ess_sup() const { return shift_ + scale_ * core_support().second; }
    double ess_inf() const { return shift_ + scale_ * core_support().first; }

    // Levels where alpha -> alpha * tail_average(alpha) has kinks (atomic laws).
    std::vector<double> tail_breakpoints() const {
        std::vector<double> out;
        if (const auto* e = std::get_if<EmpiricalCore>(&core_)) {
            for (size_t k = 0; k + 1 < e->cum.size(); ++k) {
                double a = 1.0 - ipow(e->cum[k], maxpow_);
                if (a > 0.0 && a < 1.0) out.push_back(a);
            }
            std::sort(out.begin(), out.end());
        }
        return out;
    }

  private:
    ScalarLaw() = default;

    double root_m(double t) const {
        if (maxpow_ == 1) return t;
        return std::pow(t, 1.0 / double(maxpow_));
    }

    static double ipow(double x, long m) {
        if (m == 1) return x;
        double r = 1.0;
        for (long i = 0; i < m; ++i) r *= x;
        return r;
    }

    // Density of the max-of-m law in core coordinates: m F(x)^{m-1} f(x).
    double weighted_density(double u) const {
        double f = core_density(u);
        if (maxpow_ == 1) return f;
        return double(maxpow_) * std::pow(core_cdf(u), double(maxpow_ - 1)) * f;
    }

    // ---- core dispatch ----

    double core_quantile(double t) const {
        if (const auto* e = std::get_if<EmpiricalCore>(&core_)) {
            auto it = std::lower_bound(e->cum.begin(), e->cum.end(), t);
            if (it == e->cum.end()) --it;
            return e->values[size_t(it - e->cum.begin())];
        }
        if (const auto* pp = std::get_if<PiecewisePolyCore>(&core_)) {
            const auto& ps = pp->pieces;
            size_t lo = 0, hi = ps.size();
            while (lo + 1 < hi) {
                size_t mid = (lo + hi) / 2;
                if (ps[mid].mass_lo >= t) hi = mid; else lo = mid;
            }
            // inf-form: take the first piece whose closure reaches level t.
            while (lo > 0 && ps[lo].mass_lo >= t) --lo;
            const PolyPiece& p = ps[lo];
            double target = t - p.mass_lo;
            if (target <= 0.0) return p.lo;
            if (target >= p.mass) return p.hi;
            double len = p.hi - p.lo;
            if (p.antider.size() <= 3) {
                // quadratic CDF piece: solve c1 x + c2 x^2 = target
                double c1 = p.antider.size() > 1 ? p.antider[1] : 0.0;
                double c2 = p.antider.size() > 2 ? p.antider[2] : 0.0;
                double xi;
                if (std::abs(c2) < 1e-300) xi = target / c1;
                else {
                    double disc = std::max(c1 * c1 + 4.0 * c2 * target, 0.0);
                    xi = (2.0 * target) / (c1 + std::sqrt(disc));
                }
                return p.lo + std::clamp(xi, 0.0, len);
            }
            // higher degree: bisection + Newton polish
            double a = 0.0, b = len;
            for (int it2 = 0; it2 < 200 && b - a > 1e-16 * (1.0 + len); ++it2) {
                double m = 0.5 * (a + b);
                if (poly_eval(p.antider, m) >= target) b = m; else a = m;
            }
            return p.lo + 0.5 * (a + b);
        }
        const auto& b = std::get<BallCore>(core_);
        double k = 0.5 * (b.dim - 1);
        double base = law_detail::ball_antider(k, -1.0);
        double lo = -1.0, hi = 1.0;
        for (int it2 = 0; it2 < 80; ++it2) {
            double m = 0.5 * (lo + hi);
            double F = (law_detail::ball_antider(k, m) - base) / b.total;
            if (F >= t) hi = m; else lo = m;
        }
        return 0.5 * (lo + hi);
    }

    double core_cdf(double s) const {
        if (const auto* e = std::get_if<EmpiricalCore>(&core_)) {
            auto it = std::upper_bound(e->values.begin(), e->values.end(), s);
            if (it == e->values.begin()) return 0.0;
            return e->cum[size_t(it - e->values.begin()) - 1];
        }
        if (const auto* pp = std::get_if<PiecewisePolyCore>(&core_)) {
            const auto& ps = pp->pieces;
            if (s <= ps.front().lo) return 0.0;
            if (s >= ps.back().hi) return 1.0;
            size_t lo = 0, hi = ps.size() - 1;
            while (lo < hi) {
                size_t mid = (lo + hi + 1) / 2;
                if (ps[mid].lo <= s) lo = mid; else hi = mid - 1;
            }
            const PolyPiece& p = ps[lo];
            return std::clamp(p.mass_lo + poly_eval(p.antider, std::min(s, p.hi) - p.lo), 0.0, 1.0);
        }
        const auto& b = std::get<BallCore>(core_);
        if (s <= -1.0) return 0.0;
        if (s >= 1.0) return 1.0;
        double k = 0.5 * (b.dim - 1);
        return std::clamp((law_detail::ball_antider(k, s) - law_detail::ball_antider(k, -1.0)) / b.total,
                          0.0, 1.0);
    }

    double core_density(double s) const {
        if (const auto* pp = std::get_if<PiecewisePolyCore>(&core_)) {
            const auto& ps = pp->pieces;
            if (s < ps.front().lo || s > ps.back().hi) return 0.0;
            for (const auto& p : ps)
                if (s <= p.hi) return std::max(poly_eval(p.coeffs, s - p.lo), 0.0);
            return 0.0;
        }
        if (const auto* b = std::get_if<BallCore>(&core_)) {
            if (s <= -1.0 || s >= 1.0) return 0.0;
            double k = 0.5 * (b->dim - 1);
            return std::pow(1.0 - s * s, k) / b->total;
        }
        throw std::logic_error("density undefined for atomic laws");
    }

    // Integral of q(s) * s^pow over (a, b), pow real >= 0.
    double core_qpi(double a, double b, double pow) const {
        if (b <= a) return 0.0;
        if (const auto* e = std::get_if<EmpiricalCore>(&core_)) {
            double s = 0.0, prev_c = 0.0;
            double p1 = pow + 1.0;
            for (size_t k = 0; k < e->values.size(); ++k) {
                double clo = std::max(prev_c, a), chi = std::min(e->cum[k], b);
                if (chi > clo)
                    s += e->values[k] * (std::pow(chi, p1) - std::pow(clo, p1)) / p1;
                prev_c = e->cum[k];
                if (prev_c >= b) break;
            }
            return s;
        }
        // Continuous cores: substitute s = F(x), integrate x F(x)^pow f(x) dx.
        double xa = (a <= 0.0) ? core_support().first : core_quantile(a);
        double xb = (b >= 1.0) ? core_support().second : core_quantile(b);
        if (xb <= xa) return 0.0;
        if (const auto* pp = std::get_if<PiecewisePolyCore>(&core_)) {
            double total = 0.0;
            bool integer_pow = (pow == std::floor(pow)) && pow <= 60.0;
            for (const auto& p : pp->pieces) {
                double lo = std::max(p.lo, xa), hi = std::min(p.hi, xb);
                if (hi <= lo) continue;
                auto f = [&](double x) {
                    double loc = x - p.lo;
                    double F = std::clamp(p.mass_lo + poly_eval(p.antider, loc), 0.0, 1.0);
                    double w = (pow == 0.0) ? 1.0 : std::pow(F, pow);
                    return x * w * poly_eval(p.coeffs, loc);
                };
                if (integer_pow) {
                    int deg = int(p.coeffs.size()) - 1;
                    int total_deg = 1 + int(pow) * (deg + 1) + deg;
                    total += integrate_gl(f, lo, hi, total_deg / 2 + 2);
                } else {
                    total += integrate_adaptive(f, lo, hi, 1e-13);
                }
            }
            return total;
        }
        const auto& ball = std::get<BallCore>(core_);
        double k = 0.5 * (ball.dim - 1);
        if (pow == 0.0) {
            // closed form: integral of x (1-x^2)^k dx = -(1-x^2)^{k+1} / (2k+2)
            auto prim = [&](double x) {
                return -std::pow(std::max(1.0 - x * x, 0.0), k + 1.0) / (2.0 * k + 2.0);
            };
            return (prim(xb) - prim(xa)) / ball.total;
        }
        double base = law_detail::ball_antider(k, -1.0);
        auto f = [&](double x) {
            double F = std::clamp((law_detail::ball_antider(k, x) - base) / ball.total, 0.0, 1.0);
            return x * std::pow(F, pow) * std::pow(std::max(1.0 - x * x, 0.0), k) / ball.total;
        };
        return integrate_adaptive(f, xa, xb, 1e-13);
    }

    std::pair<double, double> core_support() const {
        if (const auto* e = std::get_if<EmpiricalCore>(&core_))
            return {e->values.front(), e->values.back()};
        if (const auto* pp = std::get_if<PiecewisePolyCore>(&core_))
            return {pp->pieces.front().lo, pp->pieces.back().hi};
        return {-1.0, 1.0};
    }

    std::variant<EmpiricalCore, PiecewisePolyCore, BallCore> core_;
    double scale_ = 1.0;
    double shift_ = 0.0;
    long maxpow_ = 1;

    friend ScalarLaw convolve_with_uniform(const ScalarLaw& law, double halfwidth);
};

// Law of X + U with U uniform on [-a, a], X a plain piecewise-polynomial law.
// Used to build exact box marginals in any dimension.
inline ScalarLaw convolve_with_uniform(const ScalarLaw& law, double halfwidth) {
    require(halfwidth > 0.0, "convolution halfwidth must be positive");
    const auto* pp = std::get_if<law_detail::PiecewisePolyCore>(&law.core_);
    require(pp != nullptr && law.maxpow_ == 1, "convolution needs a plain density law");
    const double a = halfwidth / law.scale_;  // work in core coordinates

    // Global antiderivative F with F(support lo) = 0, F = 1 beyond support.
    const auto& ps = pp->pieces;
    auto F = [&](double x) -> double {
        if (x <= ps.front().lo) return 0.0;
        if (x >= ps.back().hi) return 1.0;
        for (const auto& p : ps)
            if (x <= p.hi) return p.mass_lo + poly_eval(p.antider, x - p.lo);
        return 1.0;
    };

    std::vector<double> breaks;
    for (const auto& p : ps) {
        breaks.push_back(p.lo - a);
        breaks.push_back(p.lo + a);
    }
    breaks.push_back(ps.back().hi - a);
    breaks.push_back(ps.back().hi + a);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double x, double y) { return std::abs(x - y) <= 1e-14; }),
                 breaks.end());

    // On each cell the convolved density is (F(x+a) - F(x-a)) / (2a), a
    // polynomial assembled from the antiderivatives of the two source pieces.
    auto antider_poly_at = [&](double x) -> std::pair<std::vector<double>, double> {
        // antiderivative polynomial in (y - piece.lo) valid around y = x, plus its origin
        if (x < ps.front().lo) return {{0.0}, x};
        if (x > ps.back().hi) return {{1.0}, x};
        for (const auto& p : ps) {
            if (x <= p.hi + 1e-300) {
                std::vector<double> c = p.antider;
                c[0] += p.mass_lo;
                return {std::move(c), p.lo};
            }
        }
        return {{1.0}, x};
    };

    std::vector<std::vector<double>> coeffs;
    std::vector<double> kept;
    kept.push_back(breaks.front());
    for (size_t j = 0; j + 1 < breaks.size(); ++j) {
        double lo = breaks[j], hi = breaks[j + 1];
        if (hi - lo <= 1e-14) continue;
        double mid = 0.5 * (lo + hi);
        auto [cu, ou] = antider_poly_at(mid + a);
        auto [cl, ol] = antider_poly_at(mid - a);
        // express both in local coordinate t = x - lo:  y_u = t + (lo + a - ou)
        std::vector<double> up = poly_recenter(cu, lo + a - ou);
        std::vector<double> dn = poly_recenter(cl, lo - a - ol);
        size_t n = std::max(up.size(), dn.size());
        std::vector<double> g(n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            double u = i < up.size() ? up[i] : 0.0;
            double d = i < dn.size() ? dn[i] : 0.0;
            g[i] = (u - d) / (2.0 * a);
        }
        while (g.size() > 1 && std::abs(g.back()) < 1e-300) g.pop_back();
        coeffs.push_back(std::move(g));
        kept.push_back(hi);
    }
    ScalarLaw out = ScalarLaw::piecewise_poly(kept, std::move(coeffs));
    return out.affine(law.scale_, law.shift_);
}

}  // namespace subex

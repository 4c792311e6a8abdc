#pragma once

#include <cmath>
#include <vector>

#include "subex/common.hpp"
#include "subex/expectation.hpp"
#include "subex/polygon.hpp"
#include "subex/quantile_body.hpp"
#include "subex/scalar_law.hpp"
#include "subex/shapes.hpp"
#include "subex/support_field.hpp"

namespace subex {

// Convex-body transforms driven by one-dimensional sublinear expectations of
// projection laws: h(body, u) = e(<xi, u>) per direction.

namespace transform_detail {

template <typename LawAt>
SupportField spec_field(LawAt&& law_at, const ExpectationSpec& spec, const DirectionGrid& grid) {
    SupportField f = SupportField::on(grid);
    for (int j = 0; j < grid.size(); ++j) {
        ScalarLaw law = law_at(grid.dirs[j]);
        f.set(j, evaluate(spec, law));
    }
    return f;
}

}  // namespace transform_detail

// ---- floating-like body E_e ----

inline BodyEstimate floating_like_body(const WeightedSample& mu, const ExpectationSpec& spec,
                                       const DirectionGrid& grid) {
    require(mu.dim() == 2, "planar bodies require a planar sample");
    // exact path for the average quantile of a discrete measure (gap 0)
    if (const auto* aq = std::get_if<espec::AvgQuantile>(&spec.v))
        return BodyEstimate::exact(exact_avg_quantile_body(mu, aq->alpha));
    auto field = transform_detail::spec_field(
        [&](Vec2 u) { return mu.project(u); }, spec, grid);
    return body_from_support(field);
}

inline BodyEstimate floating_like_body(const ConvexShape& K, const ExpectationSpec& spec,
                                       const DirectionGrid& grid) {
    require(K.dim() == 2, "planar bodies require a planar shape");
    auto field = transform_detail::spec_field(
        [&](Vec2 u) { return K.project(u); }, spec, grid);
    return body_from_support(field);
}

// Support field of the average-quantile body E_alpha; shared by the Aumann
// integral constructions.
inline SupportField avg_quantile_field(const ConvexShape& K, double alpha,
                                       const DirectionGrid& grid) {
    SupportField f = SupportField::on(grid);
    for (int j = 0; j < grid.size(); ++j)
        f.set(j, K.project(grid.dirs[j]).tail_average(alpha));
    return f;
}

// ---- depth-trimmed region D_delta ----

struct DepthRegion {
    ClipResult region;
    // Atomic laws admit several quantile versions; the inf-form is used
    // throughout and flagged here rather than branched on.
    bool atomic_quantile_warning = false;

    bool empty() const { return region.empty; }
    const Polygon2& polygon() const { return region.poly; }
};

namespace transform_detail {

template <typename LawAt>
DepthRegion depth_region_impl(LawAt&& law_at, double delta, const DirectionGrid& grid,
                              bool atomic) {
    require(delta > 0.0 && delta < 1.0, "depth level must lie in (0,1)");
    std::vector<Halfspace> hs;
    hs.reserve(grid.size());
    for (int j = 0; j < grid.size(); ++j)
        hs.emplace_back(grid.dirs[j], law_at(grid.dirs[j]).quantile(1.0 - delta));
    DepthRegion d;
    d.region = halfspace_intersection(hs);
    d.atomic_quantile_warning = atomic;
    return d;
}

}  // namespace transform_detail

inline DepthRegion depth_region(const WeightedSample& mu, double delta,
                                const DirectionGrid& grid) {
    require(mu.dim() == 2, "planar depth regions require a planar sample");
    return transform_detail::depth_region_impl(
        [&](Vec2 u) { return mu.project(u); }, delta, grid, true);
}

inline DepthRegion depth_region(const ConvexShape& K, double delta, const DirectionGrid& grid) {
    require(K.dim() == 2, "planar depth regions require a planar shape");
    return transform_detail::depth_region_impl(
        [&](Vec2 u) { return K.project(u); }, delta, grid, false);
}

// ---- Ulam floating body M_delta(K) = E_{delta / V(K)}(K) ----

inline BodyEstimate ulam_floating(const ConvexShape& K, double delta, const DirectionGrid& grid) {
    double vol = K.volume();
    require(delta > 0.0 && delta <= vol, "ulam level must lie in (0, volume]");
    return floating_like_body(K, ExpectationSpec::avg_quantile(delta / vol), grid);
}

// ---- centroid bodies ----

// h(u) = <x_K, u> + a (E <xi - x_K, u>_+^p)^{1/p}; exact partial moments from
// the projection laws.
inline BodyEstimate centroid_body(const ConvexShape& K, double p, double a,
                                  const DirectionGrid& grid) {
    require(K.dim() == 2, "planar bodies require a planar shape");
    require(p >= 1.0, "centroid body needs p >= 1");
    require(a >= 0.0 && a <= 1.0, "centroid body needs a in [0,1]");
    SupportField f = SupportField::on(grid);
    for (int j = 0; j < grid.size(); ++j) {
        ScalarLaw law = K.project(grid.dirs[j]);
        double mean = law.mean();
        double h = mean;
        if (a > 0.0)
            h += a * std::pow(std::max(law.upper_partial_pow(mean, p), 0.0), 1.0 / p);
        f.set(j, h);
    }
    return body_from_support(f);
}

// Classical centroid body of a symmetric K through dilated Ulam floating
// bodies: h(u) = 2 sup_alpha alpha * e_alpha(<xi - x_K, u>) + 2 <x_K, u>.
inline BodyEstimate centroid_via_ulam(const ConvexShape& K, const std::vector<double>& alphas,
                                      const DirectionGrid& grid) {
    require(K.dim() == 2, "planar bodies require a planar shape");
    require(!alphas.empty(), "centroid_via_ulam needs a nonempty alpha grid");
    auto c = K.barycenter2();
    double scale = std::max(1.0, std::abs(K.support(Vec2{1.0, 0.0})) + std::abs(c.x) + std::abs(c.y));
    for (int j = 0; j < grid.size(); ++j) {
        Vec2 u = grid.dirs[j];
        double hp = K.support(u) - dot(c, u);
        double hm = K.support(-u) + dot(c, u);
        require(std::abs(hp - hm) <= 1e-9 * scale,
                "centroid_via_ulam requires a shape symmetric about its barycenter");
    }
    SupportField f = SupportField::on(grid);
    for (int j = 0; j < grid.size(); ++j) {
        ScalarLaw law = K.project(grid.dirs[j]);
        double mean = law.mean();
        double best = 0.0;
        for (double alpha : alphas) {
            require(alpha > 0.0 && alpha <= 1.0, "alpha grid must lie in (0,1]");
            best = std::max(best, law.quantile_integral(1.0 - alpha, 1.0) - alpha * mean);
        }
        f.set(j, 2.0 * (mean + best));
    }
    return body_from_support(f);
}

inline std::vector<double> default_alpha_grid(int n = 512) {
    // covers (0,1] with emphasis on [1/2,1], where alpha * e_alpha attains
    // its supremum for symmetric laws; 1/2 and 1 are included exactly
    std::vector<double> a;
    for (int i = 1; i <= n; ++i) a.push_back(double(i) / double(n));
    if (std::find(a.begin(), a.end(), 0.5) == a.end()) a.push_back(0.5);
    std::sort(a.begin(), a.end());
    return a;
}

// ---- expectile transform ----

struct ExpectilePair {
    BodyEstimate direct;
    BodyEstimate representation;
};

// Direct path evaluates the expectile per direction; the representation path
// takes the supremum of s(alpha) (e_alpha - mean) over a t-grid, with
// s(alpha) = alpha(2 tau - 1) / (alpha(2 tau - 1) + (1 - tau)).
inline ExpectilePair expectile_transform(const ConvexShape& K, double tau,
                                         const DirectionGrid& grid, int t_nodes = 256) {
    require(K.dim() == 2, "planar bodies require a planar shape");
    require(tau >= 0.5 && tau < 1.0, "expectile level must lie in [1/2,1)");
    ExpectilePair out;
    out.direct = floating_like_body(K, ExpectationSpec::expectile(tau), grid);

    SupportField f = SupportField::on(grid);
    for (int j = 0; j < grid.size(); ++j) {
        ScalarLaw law = K.project(grid.dirs[j]);
        double mean = law.mean();
        double best = 0.0;
        for (int i = 1; i <= t_nodes; ++i) {
            double alpha = double(i) / double(t_nodes);
            double s = alpha * (2.0 * tau - 1.0) /
                       (alpha * (2.0 * tau - 1.0) + (1.0 - tau));
            best = std::max(best, s * (law.tail_average(alpha) - mean));
        }
        f.set(j, mean + best);
    }
    out.representation = body_from_support(f);
    return out;
}

// ---- expected random polytope E P_m ----

// Aumann integral of E_alpha fields against nu(d alpha) = m(m-1) alpha
// (1-alpha)^{m-2} d alpha on a Gauss-Legendre grid, doubled until the
// support values settle below 1e-8.
inline BodyEstimate expected_polytope(const ConvexShape& K, long m, const DirectionGrid& grid,
                                      int base_nodes = 64) {
    require(K.dim() == 2, "planar bodies require a planar shape");
    require(m >= 1, "expected polytope needs m >= 1");
    if (m == 1) return BodyEstimate::exact(Polygon2::point(K.barycenter2()));

    auto nu_density = [m](double a) {
        return double(m) * double(m - 1) * a * std::pow(1.0 - a, double(m - 2));
    };

    auto integrate_fields = [&](int nodes) {
        const GaussLegendre& gl = gauss_legendre(nodes);
        std::vector<SupportField> fields;
        std::vector<std::pair<double, const SupportField*>> terms;
        fields.reserve(nodes);
        for (int i = 0; i < nodes; ++i) {
            double a = 0.5 * (gl.nodes[i] + 1.0);
            double w = 0.5 * gl.weights[i] * nu_density(a);
            fields.push_back(avg_quantile_field(K, a, grid));
            terms.emplace_back(w, nullptr);
        }
        for (int i = 0; i < nodes; ++i) terms[i].second = &fields[i];
        return aumann_integral(terms);
    };

    SupportField f = integrate_fields(base_nodes);
    for (int nodes = base_nodes * 2; nodes <= 512; nodes *= 2) {
        SupportField g = integrate_fields(nodes);
        double change = 0.0;
        for (int j = 0; j < grid.size(); ++j)
            change = std::max(change, std::abs(g.values[j] - f.values[j]));
        f = std::move(g);
        if (change < 1e-8) break;
    }
    return body_from_support(f);
}

// ---- Kusuoka-mixture bodies ----

inline BodyEstimate kusuoka_body(const WeightedSample& mu,
                                 const std::vector<SpectralMeasure>& measures,
                                 const DirectionGrid& grid) {
    require(mu.dim() == 2, "planar bodies require a planar sample");
    require(!measures.empty(), "kusuoka body needs a nonempty family");
    SupportField f = SupportField::on(grid);
    for (int j = 0; j < grid.size(); ++j)
        f.set(j, kusuoka_sup(mu.project(grid.dirs[j]), measures));
    return body_from_support(f);
}

inline BodyEstimate kusuoka_body(const ConvexShape& K,
                                 const std::vector<SpectralMeasure>& measures,
                                 const DirectionGrid& grid) {
    require(K.dim() == 2, "planar bodies require a planar shape");
    require(!measures.empty(), "kusuoka body needs a nonempty family");
    SupportField f = SupportField::on(grid);
    for (int j = 0; j < grid.size(); ++j)
        f.set(j, kusuoka_sup(K.project(grid.dirs[j]), measures));
    return body_from_support(f);
}

// ---- maximum-extension fingerprint ----

// m(c+1) * integral of q_s(beta) s^{(c+1)m - 1} ds; exact for empirical laws.
// Distinct integrable laws separate for some m, which makes the family a
// distribution fingerprint.
inline double max_extension_spectral_family(const ScalarLaw& law, double c, long m) {
    require(c >= 0.0, "fingerprint constant must be nonnegative");
    require(m >= 1, "fingerprint order must be >= 1");
    double pow = (c + 1.0) * double(m) - 1.0;
    return double(m) * (c + 1.0) * law.quantile_power_integral(0.0, 1.0, pow);
}

// Direct quadrature of the two-term average-quantile maximum-extension
// formula; test oracle for the canonical max_of route.
inline double avg_quantile_max_direct(const ScalarLaw& law, double alpha, long m) {
    require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0,1]");
    require(m >= 1, "m must be >= 1");
    if (m == 1) return law.tail_average(alpha);
    double T = 1.0 - std::pow(1.0 - alpha, 1.0 / double(m));
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        return t * std::pow(1.0 - t, double(m - 2)) * law.tail_average(t);
    };
    std::vector<double> cuts = law.tail_breakpoints();
    cuts.push_back(T);
    std::sort(cuts.begin(), cuts.end());
    double integral = 0.0, prev = 0.0;
    for (double c : cuts) {
        if (c <= prev || c > T) continue;
        integral += integrate_adaptive(integrand, prev, c, 1e-13);
        prev = c;
    }
    double lead = double(m) * double(m - 1) / alpha * integral;
    double boundary = double(m) / alpha * std::pow(1.0 - alpha, double(m - 1) / double(m)) * T *
                      law.tail_average(T);
    return lead + boundary;
}

}  // namespace subex

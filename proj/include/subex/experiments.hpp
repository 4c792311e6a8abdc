#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "subex/common.hpp"
#include "subex/expectation.hpp"
#include "subex/json_io.hpp"
#include "subex/polygon.hpp"
#include "subex/rng.hpp"
#include "subex/shapes.hpp"
#include "subex/suites.hpp"
#include "subex/svg.hpp"
#include "subex/transforms.hpp"

namespace subex::experiments {

// Exact top-tail mean of an equal-weight sample of projections. Destroys the
// order of vals. Matches the empirical-law quantile integral bit for bit.
inline double tail_mean_inplace(std::vector<double>& vals, double alpha) {
    const size_t n = vals.size();
    double T = double(n) * (1.0 - alpha);
    size_t idx = std::min(size_t(std::max(std::floor(T), 0.0)), n - 1);
    std::nth_element(vals.begin(), vals.begin() + idx, vals.end());
    double integral = (double(idx + 1) - T) / double(n) * vals[idx];
    for (size_t i = idx + 1; i < n; ++i) integral += vals[i] / double(n);
    return integral / alpha;
}

// ---- concentration of empirical average-quantile bodies (Thm 5.9) ----

struct ConcentrationParams {
    double alpha = 0.3;
    double eps = 0.5;
    size_t n = 100000;
    int seeds = 200;
    int grid_n = 64;
};

inline Report run_concentration(const ConvexShape& K, const ConcentrationParams& p,
                                std::uint64_t seed) {
    Report rep;
    rep.suite = "experiment.concentration";
    rep.seed = seed;
    rep.params["alpha"] = p.alpha;
    rep.params["eps"] = p.eps;
    rep.params["n"] = p.n;
    rep.params["seeds"] = p.seeds;
    rep.params["grid"] = p.grid_n;

    DirectionGrid grid = DirectionGrid::uniform(p.grid_n);
    std::vector<double> h_ref(grid.size());
    double r = kInf;
    for (int j = 0; j < grid.size(); ++j) {
        h_ref[j] = K.project(grid.dirs[j]).tail_average(p.alpha);
        r = std::min(r, h_ref[j]);
    }
    require(r > 0.0, "concentration experiment needs a body containing the origin");
    double R = Polygon2(K.outline()).diameter();

    const int d = 2;
    double bound = 1.0 - std::pow(6.0, d + 1) * std::pow(1.0 + 1.0 / p.eps, d) *
                             std::exp(-p.alpha * p.eps * p.eps * r * r * double(p.n) /
                                      (44.0 * R * R));
    rep.params["paper_bound"] = bound;
    rep.params["inradius_r"] = r;
    rep.params["diameter_R"] = R;

    Rng master(seed, 606);
    int hits = 0;
    std::vector<double> proj(p.n);
    for (int s = 0; s < p.seeds; ++s) {
        WeightedSample sample = K.sample_uniform(p.n, master.split(s).next_u64());
        bool ok = true;
        for (int j = 0; j < grid.size() && ok; ++j) {
            for (size_t i = 0; i < p.n; ++i)
                proj[i] = grid.dirs[j].x * sample.points[i][0] +
                          grid.dirs[j].y * sample.points[i][1];
            double est = tail_mean_inplace(proj, p.alpha);
            if (est < (1.0 - p.eps) * h_ref[j] || est > (1.0 + p.eps) * h_ref[j]) ok = false;
        }
        hits += ok ? 1 : 0;
    }
    double freq = double(hits) / double(p.seeds);
    rep.params["sandwich_frequency"] = freq;
    rep.add_bool("sandwich_frequency_vs_bound", bound <= 0.0 || freq >= bound);

    // median support deviation must decay strictly over the n-grid
    std::vector<double> medians;
    for (size_t n_small : {size_t(100), size_t(1000), size_t(10000)}) {
        std::vector<double> devs;
        std::vector<double> small(n_small);
        for (int s = 0; s < p.seeds; ++s) {
            WeightedSample sample =
                K.sample_uniform(n_small, master.split(100000 + s).next_u64());
            double dev = 0.0;
            for (int j = 0; j < grid.size(); ++j) {
                for (size_t i = 0; i < n_small; ++i)
                    small[i] = grid.dirs[j].x * sample.points[i][0] +
                               grid.dirs[j].y * sample.points[i][1];
                dev = std::max(dev, std::abs(tail_mean_inplace(small, p.alpha) - h_ref[j]));
            }
            devs.push_back(dev);
        }
        std::nth_element(devs.begin(), devs.begin() + devs.size() / 2, devs.end());
        medians.push_back(devs[devs.size() / 2]);
    }
    rep.params["median_deviation"] = medians;
    rep.add_bool("median_decay_strict", medians[0] > medians[1] && medians[1] > medians[2]);
    return rep;
}

// ---- expected random polytopes (Ex. 6.5): spectral formula vs Monte Carlo ----

inline Report run_expected_polytope(const ConvexShape& K, const std::vector<long>& ms,
                                    size_t trials, std::uint64_t seed, int grid_n = 64,
                                    int compare_dirs = 16) {
    Report rep;
    rep.suite = "experiment.expected-polytope";
    rep.seed = seed;
    rep.params["trials"] = trials;
    rep.params["m"] = ms;
    rep.params["grid"] = grid_n;

    DirectionGrid grid = DirectionGrid::uniform(grid_n);
    Rng master(seed, 707);
    int step = std::max(1, grid_n / compare_dirs);

    for (long m : ms) {
        BodyEstimate body = expected_polytope(K, m, grid);
        WeightedSample pool = K.sample_uniform(trials * size_t(m), master.split(m).next_u64());

        double worst_sigmas = 0.0;
        double exact_gap = 0.0;
        ExpectationSpec exact_spec =
            ExpectationSpec::max_ext(ExpectationSpec::mean(), m);
        for (int j = 0; j < grid.size(); j += step) {
            Vec2 u = grid.dirs[j];
            double s1 = 0.0, s2 = 0.0;
            for (size_t t = 0; t < trials; ++t) {
                double mx = -kInf;
                for (long i = 0; i < m; ++i) {
                    const auto& pt = pool.points[t * size_t(m) + size_t(i)];
                    mx = std::max(mx, u.x * pt[0] + u.y * pt[1]);
                }
                s1 += mx;
                s2 += mx * mx;
            }
            double mean = s1 / double(trials);
            double var = std::max(s2 / double(trials) - mean * mean, 0.0);
            double se = std::sqrt(var / double(trials));
            double formula = body.outer.support(u);
            worst_sigmas = std::max(worst_sigmas, std::abs(formula - mean) / std::max(se, 1e-300));
            exact_gap = std::max(exact_gap,
                                 std::abs(formula - evaluate(exact_spec, K.project(u))));
        }
        rep.add("m" + std::to_string(m) + "_mc_deviation_sigmas", worst_sigmas, 3.0);
        rep.add("m" + std::to_string(m) + "_quadrature_vs_exact", exact_gap, 1e-6);
    }
    return rep;
}

// ---- non-monotonicity counterexample (Ex. 6.7) ----

struct NonMonotoneResult {
    Report rep;
    BodyEstimate body_l1;
    BodyEstimate body_box;
    ConvexShape l1 = ConvexShape::l1ball({0.0, 0.0}, 1.0);
    ConvexShape box = ConvexShape::box({0.0, 0.0}, {0.8, 0.1});
};

inline NonMonotoneResult run_nonmonotone(double a, double eps_half, double alpha,
                                         std::uint64_t seed, int grid_n = 720) {
    require(a > 0.0 && a + eps_half <= 1.0, "nonmonotone example needs a + eps <= 1");
    NonMonotoneResult out;
    out.l1 = ConvexShape::l1ball({0.0, 0.0}, 1.0);
    out.box = ConvexShape::box({0.0, 0.0}, {a, eps_half});

    Report& rep = out.rep;
    rep.suite = "experiment.nonmonotone";
    rep.seed = seed;
    rep.params["a"] = a;
    rep.params["eps"] = eps_half;
    rep.params["alpha"] = alpha;

    double h_K = avg_quantile(out.l1.project(Vec2{1.0, 0.0}), alpha);
    double h_L = avg_quantile(out.box.project(Vec2{1.0, 0.0}), alpha);
    rep.params["h_l1"] = h_K;
    rep.params["h_box"] = h_L;
    // closed forms: 1 - 2 sqrt(2) alpha^{1/2} / 3 and a (1 - alpha)
    double exact_K = 1.0 - 2.0 * std::sqrt(2.0) * std::sqrt(alpha) / 3.0;
    double exact_L = a * (1.0 - alpha);
    rep.add("l1_closed_form_error", std::abs(h_K - exact_K), 1e-9);
    rep.add("box_closed_form_error", std::abs(h_L - exact_L), 1e-12);
    bool nonmono = h_L > h_K;
    rep.add_bool("non_monotone_confirmed", nonmono);
    rep.params["verdict"] = nonmono ? "non-monotone confirmed" : "monotone in this direction";

    DirectionGrid grid = DirectionGrid::uniform(grid_n);
    out.body_l1 = floating_like_body(out.l1, ExpectationSpec::avg_quantile(alpha), grid);
    out.body_box = floating_like_body(out.box, ExpectationSpec::avg_quantile(alpha), grid);
    return out;
}

// ---- Minkowski-sum conjecture experiment (open problem; report only) ----

inline Report run_minkowski_conjecture(int pairs, double alpha, std::uint64_t seed,
                                       int grid_n = 256) {
    Report rep;
    rep.suite = "experiment.minkowski-conjecture";
    rep.seed = seed;
    rep.params["pairs"] = pairs;
    rep.params["alpha"] = alpha;
    rep.params["grid"] = grid_n;
    Rng rng(seed, 808);
    DirectionGrid grid = DirectionGrid::uniform(grid_n);

    int violations = 0;
    double worst = -kInf;
    for (int t = 0; t < pairs; ++t) {
        Polygon2 P = suites::random_convex_polygon(rng, 6 + int(rng.index(6)));
        Polygon2 Q = suites::random_convex_polygon(rng, 6 + int(rng.index(6)));
        ConvexShape K = suites::as_shape(P);
        ConvexShape L = suites::as_shape(Q);
        ConvexShape S = suites::as_shape(minkowski_sum(P, Q));
        double pair_worst = -kInf;
        for (int j = 0; j < grid.size(); ++j) {
            Vec2 u = grid.dirs[j];
            double lhs = S.project(u).tail_average(alpha);
            double rhs = K.project(u).tail_average(alpha) + L.project(u).tail_average(alpha);
            pair_worst = std::max(pair_worst, lhs - rhs);
        }
        worst = std::max(worst, pair_worst);
        if (pair_worst > 1e-9) ++violations;
    }
    rep.params["violations"] = violations;
    rep.params["worst_excess"] = worst;
    rep.add_bool("no_violation_found", violations == 0);
    return rep;
}

// ---- uniqueness fingerprint tables (Thm 5.7 family values) ----

inline Report run_fingerprint(const ScalarLaw& law1, const ScalarLaw& law2, double c,
                              long m_max, std::uint64_t seed) {
    Report rep;
    rep.suite = "experiment.fingerprint";
    rep.seed = seed;
    rep.params["c"] = c;
    rep.params["m_max"] = m_max;

    std::vector<double> t1, t2;
    double max_gap = 0.0;
    for (long m = 1; m <= m_max; ++m) {
        double v1 = max_extension_spectral_family(law1, c, m);
        double v2 = max_extension_spectral_family(law2, c, m);
        t1.push_back(v1);
        t2.push_back(v2);
        max_gap = std::max(max_gap, std::abs(v1 - v2));
    }
    rep.params["table_law1"] = t1;
    rep.params["table_law2"] = t2;
    rep.params["max_separation"] = max_gap;
    rep.add("mean_agreement_m1", std::abs(t1.front() - t2.front()),
            c == 0.0 ? 1e-12 : kInf);
    rep.add_bool("laws_separated", max_gap > 1e-6);
    return rep;
}

}  // namespace subex::experiments

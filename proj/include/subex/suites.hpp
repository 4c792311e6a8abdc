#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "subex/common.hpp"
#include "subex/expectation.hpp"
#include "subex/json_io.hpp"
#include "subex/oracles.hpp"
#include "subex/polygon.hpp"
#include "subex/quantile_body.hpp"
#include "subex/rng.hpp"
#include "subex/shapes.hpp"
#include "subex/transforms.hpp"

namespace subex::suites {

// ---- random instance generators ----

inline ScalarLaw random_empirical(Rng& rng, int max_atoms, bool equal_weights = false) {
    int n = 2 + int(rng.index(std::max(1, max_atoms - 1)));
    std::vector<double> vals(n), w(n);
    for (int i = 0; i < n; ++i) {
        vals[i] = rng.uniform(-2.0, 2.0);
        w[i] = equal_weights ? 1.0 : rng.uniform(0.1, 1.0);
    }
    double sum = 0.0;
    for (double x : w) sum += x;
    for (double& x : w) x /= sum;
    return ScalarLaw::empirical(std::move(vals), std::move(w));
}

inline WeightedSample random_sample2(Rng& rng, int n_atoms, bool equal_weights = true) {
    std::vector<std::vector<double>> pts;
    std::vector<double> w;
    for (int i = 0; i < n_atoms; ++i) {
        pts.push_back({rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)});
        w.push_back(equal_weights ? 1.0 : rng.uniform(0.1, 1.0));
    }
    double sum = 0.0;
    for (double x : w) sum += x;
    for (double& x : w) x /= sum;
    return WeightedSample(std::move(pts), std::move(w));
}

inline Polygon2 random_convex_polygon(Rng& rng, int n_pts, double radius = 1.0) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n_pts; ++i) {
        double a = 2.0 * kPi * (double(i) + rng.uniform(0.1, 0.9)) / double(n_pts);
        double r = radius * rng.uniform(0.55, 1.0);
        pts.push_back(dir_of_angle(a) * r);
    }
    Polygon2 hull = convex_hull(std::move(pts));
    require(hull.size() >= 3, "random polygon degenerated");
    return hull;
}

inline ConvexShape as_shape(const Polygon2& poly) {
    return ConvexShape::polygon(poly.vertices());
}

// ---- duals: Thm 2.2 / Eq. (4) equivalences at desk scale ----

inline Report run_duals(std::uint64_t seed, int n_laws = 200, double tol_override = 0.0) {
    Report rep;
    rep.suite = "duals";
    rep.seed = seed;
    rep.params["laws"] = n_laws;
    Rng rng(seed, 101);

    double err_avg = 0.0, err_greedy = 0.0, err_os = 0.0, err_exp = 0.0;
    double witness_budget = 0.0, witness_box = 0.0, greedy_gain = 0.0;
    for (int t = 0; t < n_laws; ++t) {
        ScalarLaw law = random_empirical(rng, 12);
        double alpha = rng.uniform(0.05, 1.0);
        double a = rng.uniform(0.0, 1.0);
        double tau = rng.uniform(0.5, 0.95);

        double direct = avg_quantile(law, alpha);
        auto [lp_value, witness] = dual_avg_quantile(law, alpha);
        err_avg = std::max(err_avg, std::abs(lp_value - direct));
        err_greedy = std::max(err_greedy, std::abs(witness.value - direct));
        err_os = std::max(err_os,
                          std::abs(dual_one_sided(law, a) - one_sided_moment(law, 1.0, a)));
        err_exp = std::max(err_exp, std::abs(dual_expectile(law, tau) - expectile(law, tau)));

        auto atoms = law.atoms();
        double budget = 0.0;
        for (size_t i = 0; i < atoms.size(); ++i) {
            budget += witness.gamma[i] * atoms[i].second;
            witness_box = std::max(witness_box,
                                   std::max(-witness.gamma[i], witness.gamma[i] - 1.0 / alpha));
        }
        witness_budget = std::max(witness_budget, std::abs(budget - 1.0));

        // first-order optimality of the greedy witness: no feasible pairwise
        // transfer increases the objective
        if (t < 50) {
            for (size_t i = 0; i < atoms.size(); ++i)
                for (size_t j = 0; j < atoms.size(); ++j) {
                    if (i == j) continue;
                    bool can_up = witness.gamma[i] < 1.0 / alpha - 1e-9;
                    bool can_down = witness.gamma[j] > 1e-9;
                    if (can_up && can_down)
                        greedy_gain = std::max(greedy_gain, atoms[i].first - atoms[j].first);
                }
        }
    }
    auto tol = [&](double def) { return tol_override > 0.0 ? tol_override : def; };
    rep.add("avg_quantile_lp_error", err_avg, tol(1e-8));
    rep.add("avg_quantile_greedy_error", err_greedy, tol(1e-8));
    rep.add("one_sided_lp_error", err_os, tol(1e-8));
    rep.add("expectile_lp_error", err_exp, tol(1e-7));
    rep.add("witness_budget_error", witness_budget, tol(1e-10));
    rep.add("witness_box_violation", witness_box, tol(1e-10));
    rep.add("greedy_first_order_gain", greedy_gain, tol(1e-9));
    return rep;
}

// ---- axioms: Def. 2.1 on coupled random empirical laws ----

inline std::vector<std::pair<std::string, ExpectationSpec>> axiom_spec_set(Rng& rng) {
    std::vector<std::pair<std::string, ExpectationSpec>> specs;
    specs.emplace_back("mean", ExpectationSpec::mean());
    specs.emplace_back("avg_quantile", ExpectationSpec::avg_quantile(rng.uniform(0.05, 1.0)));
    {
        double a1 = rng.uniform(0.1, 0.9), m1 = rng.uniform(0.2, 0.8);
        SpectralMeasure nu;
        nu.atoms.push_back({a1, m1});
        nu.pieces.push_back({0.0, 1.0, {1.0 - m1}});
        nu.validate();
        specs.emplace_back("spectral", ExpectationSpec::spectral(nu));
    }
    specs.emplace_back("one_sided_p1",
                       ExpectationSpec::one_sided(1.0, rng.uniform(0.0, 1.0)));
    specs.emplace_back("one_sided_p2",
                       ExpectationSpec::one_sided(2.0, rng.uniform(0.0, 1.0)));
    specs.emplace_back("expectile", ExpectationSpec::expectile(rng.uniform(0.5, 0.95)));
    specs.emplace_back("max_ext",
                       ExpectationSpec::max_ext(
                           ExpectationSpec::avg_quantile(rng.uniform(0.2, 1.0)),
                           2 + long(rng.index(3))));
    specs.emplace_back("ess_sup", ExpectationSpec::ess_sup());
    return specs;
}

inline Report run_axioms(std::uint64_t seed, int trials = 1000, double tol_override = 0.0) {
    Report rep;
    rep.suite = "axioms";
    rep.seed = seed;
    rep.params["trials"] = trials;
    Rng rng(seed, 202);
    const double tol = tol_override > 0.0 ? tol_override : 1e-10;

    double mono = 0.0, trans = 0.0, homog = 0.0, subadd = 0.0, dilat = 0.0;
    for (int t = 0; t < trials; ++t) {
        int n = 2 + int(rng.index(15));
        std::vector<double> w(n), b1(n), b2(n);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            w[i] = rng.uniform(0.1, 1.0);
            sum += w[i];
            b1[i] = rng.uniform(-2.0, 2.0);
            b2[i] = b1[i] + rng.uniform(0.0, 1.5);  // pointwise dominating copy
        }
        for (double& x : w) x /= sum;
        auto law = [&](const std::vector<double>& vals) {
            return ScalarLaw::empirical(vals, w);
        };
        std::vector<double> bsum(n), bshift(n), bscaled(n);
        double shift = rng.uniform(-1.0, 1.0);
        double c = rng.uniform(0.1, 3.0);
        for (int i = 0; i < n; ++i) {
            bsum[i] = b1[i] + b2[i];
            bshift[i] = b1[i] + shift;
            bscaled[i] = c * b1[i];
        }

        auto specs = axiom_spec_set(rng);
        const auto& [name, spec] = specs[size_t(t) % specs.size()];
        (void)name;
        double e1 = evaluate(spec, law(b1));
        double e2 = evaluate(spec, law(b2));
        mono = std::max(mono, e1 - e2);
        trans = std::max(trans, std::abs(evaluate(spec, law(bshift)) - e1 - shift));
        homog = std::max(homog, std::abs(evaluate(spec, law(bscaled)) - c * e1));
        subadd = std::max(subadd, evaluate(spec, law(bsum)) - e1 - e2);
        dilat = std::max(dilat, law(b1).mean() - e1);
    }
    rep.add("monotonicity_violation", mono, tol);
    rep.add("translation_error", trans, tol);
    rep.add("homogeneity_error", homog, tol);
    rep.add("subadditivity_violation", subadd, tol);
    rep.add("dilatation_violation", dilat, tol);
    return rep;
}

// ---- inclusion: Thm 5.5, Eq. (14) and Eq. (stat2) ----

// exact t-integral of h(D_t, u) over (0, alpha] for an equal-weight sample:
// the depth region is constant between the order-statistic levels k/n.
struct DepthIntegral {
    std::vector<double> values;    // per grid direction, (1/alpha) * integral
    bool degenerate = false;       // some D_t in the range was empty
};

inline DepthIntegral depth_tail_integral(const WeightedSample& mu, double alpha,
                                         const DirectionGrid& grid) {
    const size_t n = mu.size();
    std::vector<ScalarLaw> laws;
    laws.reserve(grid.size());
    for (int j = 0; j < grid.size(); ++j) laws.push_back(mu.project(grid.dirs[j]));

    DepthIntegral out;
    out.values.assign(grid.size(), 0.0);
    std::vector<double> cuts;
    for (size_t k = 1; k <= n; ++k) {
        double c = double(k) / double(n);
        if (c < alpha - 1e-15) cuts.push_back(c);
    }
    cuts.push_back(alpha);
    double prev = 0.0;
    for (double c : cuts) {
        double mid = 0.5 * (prev + c);
        std::vector<Halfspace> hs;
        for (int j = 0; j < grid.size(); ++j)
            hs.emplace_back(grid.dirs[j], laws[j].quantile(1.0 - mid));
        ClipResult D = halfspace_intersection(hs);
        if (D.empty) {
            out.degenerate = true;
            return out;
        }
        for (int j = 0; j < grid.size(); ++j)
            out.values[j] += (c - prev) * D.poly.support(grid.dirs[j]);
        prev = c;
    }
    for (double& v : out.values) v /= alpha;
    return out;
}

inline Report run_inclusion(std::uint64_t seed, int n_measures = 50, int n_polygons = 20,
                            int grid_n = 256, double tol_override = 0.0) {
    Report rep;
    rep.suite = "inclusion";
    rep.seed = seed;
    rep.params["measures"] = n_measures;
    rep.params["polygons"] = n_polygons;
    rep.params["grid"] = grid_n;
    Rng rng(seed, 303);
    DirectionGrid grid = DirectionGrid::uniform(grid_n);

    // Eq. (14): D_alpha <= (1/alpha) integral of D_t <= E_alpha, per direction
    double viol_lower = 0.0, viol_upper = 0.0;
    int degenerate = 0;
    for (int t = 0; t < n_measures; ++t) {
        WeightedSample mu = random_sample2(rng, 5 + int(rng.index(26)));
        for (double alpha : {0.2, 0.5}) {
            DepthIntegral mid = depth_tail_integral(mu, alpha, grid);
            if (mid.degenerate) {
                ++degenerate;
                continue;
            }
            std::vector<Halfspace> hs;
            std::vector<ScalarLaw> laws;
            for (int j = 0; j < grid.size(); ++j) laws.push_back(mu.project(grid.dirs[j]));
            for (int j = 0; j < grid.size(); ++j)
                hs.emplace_back(grid.dirs[j], laws[j].quantile(1.0 - alpha));
            ClipResult Da = halfspace_intersection(hs);
            for (int j = 0; j < grid.size(); ++j) {
                if (!Da.empty)
                    viol_lower = std::max(viol_lower,
                                          Da.poly.support(grid.dirs[j]) - mid.values[j]);
                viol_upper = std::max(viol_upper,
                                      mid.values[j] - laws[j].tail_average(alpha));
            }
        }
    }
    rep.params["eq14_degenerate_cases"] = degenerate;

    // Eq. (stat2): D_{(e-1)alpha/e} inside E_alpha inside D_{alpha/e} for
    // log-concave sources (uniform on random convex polygons)
    const double c_lo = (std::exp(1.0) - 1.0) / std::exp(1.0);
    const double c_hi = 1.0 / std::exp(1.0);
    rep.params["stat2_constants"] = {c_lo, c_hi};
    double viol_stat_lo = 0.0, viol_stat_hi = 0.0;
    double diam_max = 0.0;
    for (int t = 0; t < n_polygons; ++t) {
        Polygon2 poly = random_convex_polygon(rng, 8 + int(rng.index(5)));
        ConvexShape K = as_shape(poly);
        diam_max = std::max(diam_max, poly.diameter());
        std::vector<ScalarLaw> laws;
        for (int j = 0; j < grid.size(); ++j) laws.push_back(K.project(grid.dirs[j]));
        for (double alpha : {0.1, 0.2, 0.3, 0.4, 0.5}) {
            std::vector<Halfspace> hs_lo, hs_hi;
            for (int j = 0; j < grid.size(); ++j) {
                hs_lo.emplace_back(grid.dirs[j], laws[j].quantile(1.0 - c_lo * alpha));
                hs_hi.emplace_back(grid.dirs[j], laws[j].quantile(1.0 - c_hi * alpha));
            }
            ClipResult D_lo = halfspace_intersection(hs_lo);
            ClipResult D_hi = halfspace_intersection(hs_hi);
            for (int j = 0; j < grid.size(); ++j) {
                double e_alpha = laws[j].tail_average(alpha);
                if (!D_lo.empty)
                    viol_stat_lo = std::max(viol_stat_lo,
                                            D_lo.poly.support(grid.dirs[j]) - e_alpha);
                require(!D_hi.empty, "outer floating body unexpectedly empty");
                viol_stat_hi = std::max(viol_stat_hi,
                                        e_alpha - D_hi.poly.support(grid.dirs[j]));
            }
        }
    }

    double angular = diam_max * (1.0 / std::cos(kPi / grid_n) - 1.0);
    auto tol = [&](double def) { return tol_override > 0.0 ? tol_override : def; };
    rep.add("eq14_lower_violation", viol_lower, tol(angular + 1e-6));
    rep.add("eq14_upper_violation", viol_upper, tol(1e-9));
    rep.add("stat2_lower_violation", viol_stat_lo, tol(angular + 1e-6));
    rep.add("stat2_upper_violation", viol_stat_hi, tol(1e-9));
    return rep;
}

// ---- bob: Thm 4.2 support equality on symmetric shapes ----

inline Report run_bob(std::uint64_t seed, int grid_n = 2048, double tol_override = 0.0) {
    Report rep;
    rep.suite = "bob";
    rep.seed = seed;
    rep.params["grid"] = grid_n;
    DirectionGrid grid = DirectionGrid::uniform(grid_n);

    std::vector<std::pair<std::string, ConvexShape>> shapes;
    shapes.emplace_back("square", ConvexShape::box({0.0, 0.0}, {1.0, 1.0}));
    std::vector<Vec2> hex;
    for (int i = 0; i < 6; ++i) hex.push_back(dir_of_angle(kPi * i / 3.0));
    shapes.emplace_back("hexagon", ConvexShape::polygon(hex));

    for (const auto& [name, K] : shapes) {
        std::vector<ScalarLaw> laws;
        for (int j = 0; j < grid.size(); ++j) laws.push_back(K.project(grid.dirs[j]));
        double diam = 0.0;
        {
            auto out = K.outline();
            Polygon2 p(out);
            diam = p.diameter();
        }
        double worst = 0.0;
        for (double delta = 0.1; delta < 0.46; delta += 0.05) {
            std::vector<Halfspace> hs;
            for (int j = 0; j < grid.size(); ++j)
                hs.emplace_back(grid.dirs[j], laws[j].quantile(1.0 - delta));
            ClipResult D = halfspace_intersection(hs);
            require(!D.empty, "depth region unexpectedly empty");
            for (int j = 0; j < grid.size(); ++j)
                worst = std::max(worst, laws[j].quantile(1.0 - delta) -
                                            D.poly.support(grid.dirs[j]));
        }
        double gap = diam * (1.0 / std::cos(kPi / grid_n) - 1.0) + 1e-9;
        rep.add(name + "_support_shortfall", worst,
                tol_override > 0.0 ? tol_override : gap);
    }
    return rep;
}

// ---- metronoid: Props 5.1 / 5.2 identities ----

inline Report run_metronoid(std::uint64_t seed, int n_instances = 30,
                            double tol_override = 0.0) {
    Report rep;
    rep.suite = "metronoid";
    rep.seed = seed;
    rep.params["instances"] = n_instances;
    Rng rng(seed, 404);

    double lp_err = 0.0, greedy_err = 0.0, touch_err = 0.0, member_err = 0.0;
    for (int t = 0; t < n_instances; ++t) {
        WeightedSample mu = random_sample2(rng, 3 + int(rng.index(10)), false);
        double alpha = (t % 2 == 0) ? 0.25 : 0.6;
        Polygon2 body = exact_avg_quantile_body(mu, alpha);
        for (int k = 0; k < 32; ++k) {
            Vec2 u = dir_of_angle(2.0 * kPi * k / 32.0 + 0.01);
            ScalarLaw law = mu.project(u);
            double direct = law.tail_average(alpha);
            auto [lp_value, witness] = dual_avg_quantile(law, alpha);
            lp_err = std::max(lp_err, std::abs(lp_value - direct));
            TouchPoint tp = support_touchpoint(mu, alpha, u);
            greedy_err = std::max(greedy_err, std::abs(tp.h - direct));
            touch_err = std::max(touch_err, std::abs(dot(tp.x, u) - tp.h));
            member_err = std::max(member_err, body.distance_to(tp.x));
            (void)witness;
        }
    }
    auto tol = [&](double def) { return tol_override > 0.0 ? tol_override : def; };
    rep.add("zonoid_lp_vs_quantile_error", lp_err, tol(1e-8));
    rep.add("metronoid_greedy_vs_quantile_error", greedy_err, tol(1e-10));
    rep.add("touchpoint_consistency_error", touch_err, tol(1e-10));
    rep.add("touchpoint_membership_error", member_err, tol(1e-9));
    return rep;
}

// ---- centroid: disk closed form and the Eq. (16)/(18) two-path identity ----

inline Report run_centroid(std::uint64_t seed, int grid_n = 720, double tol_override = 0.0) {
    Report rep;
    rep.suite = "centroid";
    rep.seed = seed;
    rep.params["grid"] = grid_n;
    DirectionGrid grid = DirectionGrid::uniform(grid_n);
    auto alphas = default_alpha_grid();

    ConvexShape disk = ConvexShape::ball({0.0, 0.0}, 1.0);
    BodyEstimate g_disk = centroid_body(disk, 1.0, 1.0, grid);
    double exact = 2.0 / (3.0 * kPi);
    rep.add("disk_radius_error",
            std::abs(g_disk.outer.support(Vec2{1.0, 0.0}) - exact),
            tol_override > 0.0 ? tol_override : 1e-6);

    auto two_path = [&](const ConvexShape& K, const std::string& name) {
        BodyEstimate direct = centroid_body(K, 1.0, 1.0, grid);
        BodyEstimate via = centroid_via_ulam(K, alphas, grid);
        Polygon2 doubled = direct.outer.scaled(2.0, Vec2{0.0, 0.0});
        double d = hausdorff(via.outer, doubled);
        double tol = 2.0 * direct.gap + via.gap + 1e-9;
        double diam = doubled.diameter();
        rep.add(name + "_two_path_hausdorff", d,
                tol_override > 0.0 ? tol_override : std::max(tol, 5e-3 * diam));
    };
    two_path(disk, "disk");
    two_path(ConvexShape::box({0.0, 0.0}, {1.0, 1.0}), "square");
    return rep;
}

// ---- continuity: Thm 6.2 along a vertex-perturbed polygon sequence ----

inline Report run_continuity(std::uint64_t seed, int grid_n = 256, double tol_override = 0.0) {
    Report rep;
    rep.suite = "continuity";
    rep.seed = seed;
    rep.params["grid"] = grid_n;
    DirectionGrid grid = DirectionGrid::uniform(grid_n);
    Rng rng(seed, 505);

    std::vector<Vec2> base = {{1.0, 0.0}, {0.2, 0.9}, {-0.8, 0.5}, {-0.7, -0.6}, {0.4, -0.8}};
    std::vector<Vec2> dirs;
    for (size_t i = 0; i < base.size(); ++i)
        dirs.push_back(dir_of_angle(rng.uniform(0.0, 2.0 * kPi)));

    std::vector<std::pair<std::string, ExpectationSpec>> specs;
    specs.emplace_back("avg_quantile_03", ExpectationSpec::avg_quantile(0.3));
    specs.emplace_back("one_sided_21", ExpectationSpec::one_sided(2.0, 1.0));
    specs.emplace_back("expectile_08", ExpectationSpec::expectile(0.8));

    ConvexShape K = ConvexShape::polygon(base);
    for (const auto& [name, spec] : specs) {
        BodyEstimate limit = floating_like_body(K, spec, grid);
        double prev = kInf;
        double worst_increase = 0.0, final_distance = 0.0;
        for (int k = 1; k <= 10; ++k) {
            std::vector<Vec2> verts = base;
            double eps = std::pow(2.0, -double(k));
            for (size_t i = 0; i < verts.size(); ++i) verts[i] += dirs[i] * (0.3 * eps);
            Polygon2 hull = convex_hull(verts);
            BodyEstimate body = floating_like_body(as_shape(hull), spec, grid);
            double d = hausdorff(body.outer, limit.outer);
            if (prev < kInf) worst_increase = std::max(worst_increase, d - prev);
            prev = d;
            final_distance = d;
        }
        rep.add(name + "_distance_increase", worst_increase,
                tol_override > 0.0 ? tol_override : 1e-9);
        rep.add(name + "_final_distance", final_distance,
                tol_override > 0.0 ? tol_override : 1e-2);
    }
    return rep;
}

inline Report run_suite(const std::string& name, std::uint64_t seed, double tol_override = 0.0) {
    if (name == "duals") return run_duals(seed, 200, tol_override);
    if (name == "axioms") return run_axioms(seed, 1000, tol_override);
    if (name == "inclusion") return run_inclusion(seed, 50, 20, 256, tol_override);
    if (name == "bob") return run_bob(seed, 2048, tol_override);
    if (name == "metronoid") return run_metronoid(seed, 30, tol_override);
    if (name == "centroid") return run_centroid(seed, 720, tol_override);
    if (name == "continuity") return run_continuity(seed, 256, tol_override);
    throw std::invalid_argument("unknown verification suite: " + name);
}

}  // namespace subex::suites

#pragma once

#include <cmath>
#include <vector>

#include "subex/common.hpp"
#include "subex/expectation.hpp"
#include "subex/scalar_law.hpp"
#include "subex/shapes.hpp"
#include "subex/simplex.hpp"

namespace subex {

// Independent brute-force verifiers for the dual representations: dense LPs
// over the feasible density sets, plus Monte Carlo support estimates.

// Nonnegative density weights attached to the atoms of an empirical law.
struct DualWitness {
    std::vector<double> gamma;
    double value = 0.0;
};

// maximize sum gamma_i p_i v_i  s.t.  0 <= gamma_i <= 1/alpha, sum gamma_i p_i = 1.
// The LP value realizes the dual form of the average quantile; the witness is
// the greedy top-fill.
inline std::pair<double, DualWitness> dual_avg_quantile(const ScalarLaw& law, double alpha) {
    require(alpha > 0.0 && alpha <= 1.0, "dual_avg_quantile needs alpha in (0,1]");
    auto atoms = law.atoms();
    const size_t n = atoms.size();

    LinearProgram lp;
    lp.objective.resize(n);
    for (size_t i = 0; i < n; ++i) lp.objective[i] = atoms[i].first * atoms[i].second;
    lp.eq_a.push_back(std::vector<double>(n));
    for (size_t i = 0; i < n; ++i) lp.eq_a[0][i] = atoms[i].second;
    lp.eq_b.push_back(1.0);
    for (size_t i = 0; i < n; ++i) {
        std::vector<double> row(n, 0.0);
        row[i] = 1.0;
        lp.ineq_a.push_back(std::move(row));
        lp.ineq_b.push_back(1.0 / alpha);
    }
    LpResult res = lp_solve(lp);
    require(res.status == LpStatus::Optimal, "avg-quantile dual LP must be solvable");

    // greedy witness: full weight 1/alpha on the largest atoms, fractional fill
    // on the marginal one (atoms() is sorted ascending)
    DualWitness w;
    w.gamma.assign(n, 0.0);
    double remaining = 1.0;
    for (size_t k = n; k-- > 0 && remaining > 1e-15;) {
        double g = std::min(1.0 / alpha, remaining / atoms[k].second);
        w.gamma[k] = g;
        remaining -= g * atoms[k].second;
    }
    for (size_t i = 0; i < n; ++i) w.value += w.gamma[i] * atoms[i].second * atoms[i].first;
    return {res.value, w};
}

// LP over zeta in [0,1]^n realizing gamma = 1 + a (zeta - E zeta); the value
// equals the p = 1 one-sided moment.
inline double dual_one_sided(const ScalarLaw& law, double a) {
    require(a >= 0.0 && a <= 1.0, "dual_one_sided needs a in [0,1]");
    auto atoms = law.atoms();
    const size_t n = atoms.size();
    double mean = 0.0;
    for (auto [v, p] : atoms) mean += v * p;

    LinearProgram lp;
    lp.objective.resize(n);
    for (size_t i = 0; i < n; ++i)
        lp.objective[i] = a * atoms[i].second * (atoms[i].first - mean);
    for (size_t i = 0; i < n; ++i) {
        std::vector<double> row(n, 0.0);
        row[i] = 1.0;
        lp.ineq_a.push_back(std::move(row));
        lp.ineq_b.push_back(1.0);
    }
    LpResult res = lp_solve(lp);
    require(res.status == LpStatus::Optimal, "one-sided dual LP must be solvable");
    return mean + res.value;
}

// LP over gamma_i >= 0, s >= 0 with sum gamma_i p_i = 1 and
// s <= gamma_i <= s tau/(1-tau); the value equals the expectile.
inline double dual_expectile(const ScalarLaw& law, double tau) {
    require(tau >= 0.5 && tau < 1.0, "dual_expectile needs tau in [1/2,1)");
    auto atoms = law.atoms();
    const size_t n = atoms.size();
    double ratio = tau / (1.0 - tau);

    LinearProgram lp;                       // vars: gamma_0..gamma_{n-1}, s
    lp.objective.assign(n + 1, 0.0);
    for (size_t i = 0; i < n; ++i) lp.objective[i] = atoms[i].first * atoms[i].second;
    lp.eq_a.push_back(std::vector<double>(n + 1, 0.0));
    for (size_t i = 0; i < n; ++i) lp.eq_a[0][i] = atoms[i].second;
    lp.eq_b.push_back(1.0);
    for (size_t i = 0; i < n; ++i) {
        std::vector<double> hi(n + 1, 0.0), lo(n + 1, 0.0);
        hi[i] = 1.0;
        hi[n] = -ratio;  // gamma_i - ratio * s <= 0
        lo[i] = -1.0;
        lo[n] = 1.0;     // s - gamma_i <= 0
        lp.ineq_a.push_back(std::move(hi));
        lp.ineq_b.push_back(0.0);
        lp.ineq_a.push_back(std::move(lo));
        lp.ineq_b.push_back(0.0);
    }
    LpResult res = lp_solve(lp);
    require(res.status == LpStatus::Optimal, "expectile dual LP must be solvable");
    return res.value;
}

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    size_t n = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo support estimate: evaluates the expectation on the empirical
// projection law of n uniform samples. Standard error by the CVaR asymptotic
// plug-in (average quantile), the CLT (mean), or a 200-fold bootstrap.
inline McEstimate mc_support(const ConvexShape& shape, const ExpectationSpec& spec,
                             const std::vector<double>& u, size_t n, std::uint64_t seed) {
    require(n >= 100, "mc_support needs n >= 100");
    WeightedSample sample = shape.sample_uniform(n, seed);
    std::vector<double> proj(n);
    for (size_t i = 0; i < n; ++i)
        proj[i] = std::inner_product(u.begin(), u.end(), sample.points[i].begin(), 0.0);

    ScalarLaw law = ScalarLaw::empirical(proj);
    McEstimate est;
    est.n = n;
    est.seed = seed;
    est.value = evaluate(spec, law);

    if (const auto* aq = std::get_if<espec::AvgQuantile>(&spec.v)) {
        double alpha = aq->alpha;
        double q = (alpha < 1.0) ? law.quantile(1.0 - alpha) : law.ess_inf();
        double s1 = 0.0, s2 = 0.0;
        for (double x : proj) {
            double y = std::max(x - q, 0.0);
            s1 += y;
            s2 += y * y;
        }
        double var = std::max(s2 / n - (s1 / n) * (s1 / n), 0.0);
        est.std_error = std::sqrt(var / double(n)) / alpha;
        return est;
    }
    if (std::holds_alternative<espec::Mean>(spec.v)) {
        double s1 = 0.0, s2 = 0.0;
        for (double x : proj) {
            s1 += x;
            s2 += x * x;
        }
        double var = std::max(s2 / n - (s1 / n) * (s1 / n), 0.0);
        est.std_error = std::sqrt(var / double(n));
        return est;
    }

    // nonparametric bootstrap, 200 resamples
    const int B = 200;
    Rng rng(seed, 0xb00757ULL);
    std::vector<double> sorted = proj;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> boots;
    boots.reserve(B);
    std::vector<double> counts(n);
    for (int b = 0; b < B; ++b) {
        std::fill(counts.begin(), counts.end(), 0.0);
        for (size_t i = 0; i < n; ++i) counts[rng.index(n)] += 1.0;
        std::vector<double> vals, w;
        for (size_t i = 0; i < n; ++i)
            if (counts[i] > 0.0) {
                vals.push_back(sorted[i]);
                w.push_back(counts[i] / double(n));
            }
        boots.push_back(evaluate(spec, ScalarLaw::empirical(std::move(vals), std::move(w))));
    }
    double s1 = 0.0, s2 = 0.0;
    for (double v : boots) {
        s1 += v;
        s2 += v * v;
    }
    double var = std::max(s2 / B - (s1 / B) * (s1 / B), 0.0);
    est.std_error = std::sqrt(var * double(B) / double(B - 1));
    return est;
}

}  // namespace subex

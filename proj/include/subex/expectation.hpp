#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "subex/common.hpp"
#include "subex/scalar_law.hpp"
#include "subex/spectral.hpp"

namespace subex {

// Tagged description of a law-determined sublinear expectation.
struct ExpectationSpec;

namespace espec {

struct Mean {};
struct AvgQuantile {
    double alpha = 0.5;
};
struct Spectral {
    SpectralMeasure nu;
};
struct OneSidedMoment {
    double p = 1.0;
    double a = 1.0;
};
struct Expectile {
    double tau = 0.75;
};
struct MaxExt {
    std::shared_ptr<const ExpectationSpec> base;
    long m = 1;
};
struct EssSup {};

}  // namespace espec

struct ExpectationSpec {
    using Variant = std::variant<espec::Mean, espec::AvgQuantile, espec::Spectral,
                                 espec::OneSidedMoment, espec::Expectile, espec::MaxExt,
                                 espec::EssSup>;
    Variant v;

    static ExpectationSpec mean() { return {espec::Mean{}}; }
    static ExpectationSpec avg_quantile(double alpha) {
        require(alpha > 0.0 && alpha <= 1.0, "avg_quantile level must lie in (0,1]");
        return {espec::AvgQuantile{alpha}};
    }
    static ExpectationSpec spectral(SpectralMeasure nu) {
        nu.validate();
        return {espec::Spectral{std::move(nu)}};
    }
    static ExpectationSpec one_sided(double p, double a) {
        require(p >= 1.0, "one-sided moment needs p >= 1");
        require(a >= 0.0 && a <= 1.0, "one-sided moment needs a in [0,1]");
        return {espec::OneSidedMoment{p, a}};
    }
    static ExpectationSpec expectile(double tau) {
        require(tau >= 0.5 && tau < 1.0, "expectile level must lie in [1/2,1)");
        return {espec::Expectile{tau}};
    }
    static ExpectationSpec max_ext(ExpectationSpec base, long m) {
        require(m >= 1, "max extension needs m >= 1");
        return {espec::MaxExt{std::make_shared<const ExpectationSpec>(std::move(base)), m}};
    }
    static ExpectationSpec ess_sup() { return {espec::EssSup{}}; }
};

// ---- numerical sublinear expectations ----

inline double avg_quantile(const ScalarLaw& law, double alpha) {
    require(alpha > 0.0 && alpha <= 1.0, "avg_quantile level must lie in (0,1]");
    return law.tail_average(alpha);
}

inline double ess_sup(const ScalarLaw& law) { return law.ess_sup(); }

// integral of avg_quantile(law, alpha) against nu(d alpha).
// Atoms are summed exactly. Polynomial density pieces are integrated in
// closed form against the piecewise-linear map alpha -> alpha * e_alpha when
// the law is plain empirical, otherwise by adaptive quadrature.
inline double spectral_value(const ScalarLaw& law, const SpectralMeasure& nu) {
    double total = 0.0;
    for (const auto& a : nu.atoms) total += a.mass * law.tail_average(a.alpha);

    if (nu.pieces.empty()) return total;

    if (law.is_plain_empirical()) {
        // alpha * e_alpha(law) = g(alpha) is piecewise linear with kinks at the
        // order-statistic levels; p(alpha) * g(alpha) / alpha integrates in
        // closed form (power terms plus one log per cell).
        std::vector<double> cells = law.tail_breakpoints();
        cells.insert(cells.begin(), 0.0);
        cells.push_back(1.0);
        for (const auto& piece : nu.pieces) {
            for (size_t k = 0; k + 1 < cells.size(); ++k) {
                double lo = std::max(piece.lo, cells[k]);
                double hi = std::min(piece.hi, cells[k + 1]);
                if (hi <= lo) continue;
                double g_lo = (cells[k] == 0.0) ? 0.0
                                                : law.quantile_integral(1.0 - cells[k], 1.0);
                double g_hi = law.quantile_integral(1.0 - cells[k + 1], 1.0);
                double B = (g_hi - g_lo) / (cells[k + 1] - cells[k]);
                double A = g_lo - B * cells[k];  // g(alpha) = A + B alpha on the cell
                // integral of p(alpha) (A/alpha + B) over [lo, hi]
                const auto& c = piece.coeffs;
                if (A != 0.0 && !c.empty() && c[0] != 0.0)
                    total += A * c[0] * (std::log(hi) - std::log(lo));
                for (size_t j = 0; j < c.size(); ++j) {
                    if (j >= 1 && A != 0.0)
                        total += A * c[j] * (std::pow(hi, double(j)) - std::pow(lo, double(j))) /
                                 double(j);
                    if (B != 0.0)
                        total += B * c[j] *
                                 (std::pow(hi, double(j + 1)) - std::pow(lo, double(j + 1))) /
                                 double(j + 1);
                }
            }
        }
        return total;
    }

    for (const auto& piece : nu.pieces) {
        auto f = [&](double a) {
            if (a <= 0.0) return 0.0;
            return poly_eval(piece.coeffs, a) * law.tail_average(std::min(a, 1.0));
        };
        // split at tail kinks of max-extended atomic laws for clean convergence
        std::vector<double> splits = law.tail_breakpoints();
        splits.push_back(piece.lo);
        splits.push_back(piece.hi);
        std::sort(splits.begin(), splits.end());
        double prev = piece.lo;
        for (double s : splits) {
            if (s <= prev || s > piece.hi) continue;
            if (s > piece.lo) {
                total += integrate_adaptive(f, prev, s, 1e-12);
                prev = s;
            }
        }
        if (piece.hi > prev) total += integrate_adaptive(f, prev, piece.hi, 1e-12);
    }
    return total;
}

inline SpectralFunction spectral_density(const SpectralMeasure& nu) {
    return SpectralFunction(nu);
}

// E beta + a (E (beta - E beta)_+^p)^{1/p}
inline double one_sided_moment(const ScalarLaw& law, double p, double a) {
    require(p >= 1.0, "one-sided moment needs p >= 1");
    require(a >= 0.0 && a <= 1.0, "one-sided moment needs a in [0,1]");
    double m = law.mean();
    if (a == 0.0) return m;
    double up = law.upper_partial_pow(m, p);
    return m + a * std::pow(std::max(up, 0.0), 1.0 / p);
}

// Unique root of tau E(beta - x)_+ = (1 - tau) E(x - beta)_+.
inline double expectile(const ScalarLaw& law, double tau) {
    require(tau >= 0.5 && tau < 1.0, "expectile level must lie in [1/2,1)");
    double mean = law.mean();
    if (tau == 0.5) return mean;
    // E(x - beta)_+ = E(beta - x)_+ - mean + x
    auto g = [&](double x) {
        double up = law.upper_partial(x);
        return tau * up - (1.0 - tau) * (up - mean + x);
    };
    double lo = law.ess_inf() - 1.0, hi = law.ess_sup() + 1.0;
    for (int i = 0; i < 20 && g(lo) < 0.0; ++i) lo -= std::max(1.0, hi - lo);
    for (int i = 0; i < 20 && g(hi) > 0.0; ++i) hi += std::max(1.0, hi - lo);
    require(g(lo) >= 0.0 && g(hi) <= 0.0, "expectile bracket failure");
    while (hi - lo > 1e-13 * std::max(1.0, std::abs(lo) + std::abs(hi))) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) >= 0.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

inline double kusuoka_sup(const ScalarLaw& law, const std::vector<SpectralMeasure>& measures) {
    require(!measures.empty(), "kusuoka supremum needs a nonempty family");
    double best = -kInf;
    for (const auto& nu : measures) best = std::max(best, spectral_value(law, nu));
    return best;
}

// inf{ lambda > 0 : E psi(beta / lambda) <= 1 } by monotone bisection.
inline double orlicz_norm(const ScalarLaw& law, const std::function<double(double)>& psi) {
    double bound = std::max(std::abs(law.ess_inf()), std::abs(law.ess_sup()));
    if (bound == 0.0) return 0.0;
    auto g = [&](double lam) {
        return law.expectation_of([&](double x) { return psi(x / lam); });
    };
    double hi = bound;
    int grow = 0;
    while (g(hi) > 1.0 && grow++ < 200) hi *= 2.0;
    require(g(hi) <= 1.0, "orlicz norm: no finite scale found");
    double lo = hi;
    int shrink = 0;
    while (g(lo * 0.5) <= 1.0 && shrink++ < 200 && lo > 1e-280) lo *= 0.5;
    lo *= 0.5;
    while (hi - lo > 1e-10 * std::max(1.0, hi)) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) <= 1.0) hi = mid; else lo = mid;
    }
    return hi;
}

inline double evaluate(const ExpectationSpec& spec, const ScalarLaw& law) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, espec::Mean>) return law.mean();
            else if constexpr (std::is_same_v<T, espec::AvgQuantile>)
                return avg_quantile(law, s.alpha);
            else if constexpr (std::is_same_v<T, espec::Spectral>)
                return spectral_value(law, s.nu);
            else if constexpr (std::is_same_v<T, espec::OneSidedMoment>)
                return one_sided_moment(law, s.p, s.a);
            else if constexpr (std::is_same_v<T, espec::Expectile>)
                return expectile(law, s.tau);
            else if constexpr (std::is_same_v<T, espec::MaxExt>)
                return evaluate(*s.base, law.max_of(s.m));
            else
                return law.ess_sup();
        },
        spec.v);
}

// ---- Kusuoka families for specific expectations ----

// (1 - a t) delta_1 + a t delta_t for the one-sided moment with p = 1.
inline std::vector<SpectralMeasure> one_sided_family(double a, const std::vector<double>& ts) {
    std::vector<SpectralMeasure> out;
    for (double t : ts) {
        double m1 = a * t;
        if (t <= 0.0) {
            out.push_back(SpectralMeasure::dirac(1.0));
            continue;
        }
        out.push_back(SpectralMeasure::two_point(t, std::clamp(m1, 0.0, 1.0)));
    }
    return out;
}

// (1 - s) delta_1 + s delta_{alpha(s)} with alpha(s) = (1-tau)s / ((2tau-1)(1-s)),
// s ranging over [0, 2 - 1/tau].
inline std::vector<SpectralMeasure> expectile_family(double tau, int count) {
    require(tau > 0.5 && tau < 1.0, "expectile family needs tau in (1/2,1)");
    std::vector<SpectralMeasure> out;
    double smax = 2.0 - 1.0 / tau;
    for (int i = 0; i <= count; ++i) {
        double s = smax * double(i) / double(count);
        if (s <= 0.0) {
            out.push_back(SpectralMeasure::dirac(1.0));
            continue;
        }
        double alpha = (1.0 - tau) * s / ((2.0 * tau - 1.0) * (1.0 - s));
        alpha = std::clamp(alpha, 1e-12, 1.0);
        out.push_back(SpectralMeasure::two_point(alpha, s));
    }
    return out;
}

// Test utility: law of max(beta_1, ..., beta_N) with N geometric(lambda),
// truncated at cumulative probability 1 - 1e-9. Atomic laws only.
inline ScalarLaw geometric_max_law(const ScalarLaw& law, double lambda) {
    require(lambda > 0.0 && lambda <= 1.0, "geometric parameter must lie in (0,1]");
    require(law.is_atomic(), "geometric max extension is provided for atomic laws");
    std::vector<double> values, weights;
    double cum = 0.0;
    for (long k = 1; cum < 1.0 - 1e-9 && k < 100000; ++k) {
        double pk = std::pow(1.0 - lambda, double(k - 1)) * lambda;
        if (pk <= 0.0) break;
        for (auto [v, p] : law.max_of(k).atoms()) {
            values.push_back(v);
            weights.push_back(p * pk);
        }
        cum += pk;
    }
    double sum = 0.0;
    for (double w : weights) sum += w;
    for (double& w : weights) w /= sum;
    return ScalarLaw::empirical(std::move(values), std::move(weights));
}

}  // namespace subex

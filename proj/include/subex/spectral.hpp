#pragma once

#include <cmath>
#include <vector>

#include "subex/common.hpp"

namespace subex {

// Probability measure on (0,1]: atoms plus piecewise-polynomial density.
// Density coefficients are in global monomials of alpha.
struct SpectralMeasure {
    struct Atom {
        double alpha = 1.0;
        double mass = 1.0;
    };
    struct DensityPiece {
        double lo = 0.0;
        double hi = 1.0;
        std::vector<double> coeffs;
    };

    std::vector<Atom> atoms;
    std::vector<DensityPiece> pieces;

    static SpectralMeasure dirac(double alpha) {
        SpectralMeasure nu;
        nu.atoms.push_back({alpha, 1.0});
        nu.validate();
        return nu;
    }

    // Two-atom mixture (1 - m1) * delta_1 + m1 * delta_alpha (m1 in [0,1]).
    static SpectralMeasure two_point(double alpha, double m1) {
        SpectralMeasure nu;
        if (m1 < 1.0) nu.atoms.push_back({1.0, 1.0 - m1});
        if (m1 > 0.0) nu.atoms.push_back({alpha, m1});
        nu.validate();
        return nu;
    }

    // nu(dt) = m(m-1) t (1-t)^{m-2} dt on (0,1]; the mixing measure of the
    // expected maximum of m >= 2 i.i.d. copies.
    static SpectralMeasure max_mixture(long m) {
        require(m >= 2, "max mixture needs m >= 2");
        SpectralMeasure nu;
        DensityPiece p;
        p.lo = 0.0;
        p.hi = 1.0;
        // expand m(m-1) t (1-t)^{m-2} in monomials
        long n = m - 2;
        std::vector<double> binom(n + 1, 0.0);
        binom[0] = 1.0;
        for (long i = 1; i <= n; ++i)
            binom[i] = binom[i - 1] * double(n - i + 1) / double(i);
        p.coeffs.assign(n + 2, 0.0);
        for (long j = 0; j <= n; ++j)
            p.coeffs[j + 1] = double(m) * double(m - 1) * binom[j] * ((j % 2) ? -1.0 : 1.0);
        nu.pieces.push_back(std::move(p));
        nu.validate();
        return nu;
    }

    static SpectralMeasure uniform_density() {
        SpectralMeasure nu;
        nu.pieces.push_back({0.0, 1.0, {1.0}});
        nu.validate();
        return nu;
    }

    double total_mass() const {
        double m = 0.0;
        for (const auto& a : atoms) m += a.mass;
        for (const auto& p : pieces) {
            auto A = poly_antiderivative(p.coeffs);
            m += poly_eval(A, p.hi) - poly_eval(A, p.lo);
        }
        return m;
    }

    void validate() const {
        for (const auto& a : atoms) {
            require(a.alpha > 0.0 && a.alpha <= 1.0, "spectral atom location must lie in (0,1]");
            require(a.mass >= 0.0, "spectral atom mass must be nonnegative");
        }
        for (const auto& p : pieces) {
            require(p.lo >= 0.0 && p.hi <= 1.0 && p.hi > p.lo, "density piece must lie in [0,1]");
            for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
                require(poly_eval(p.coeffs, p.lo + t * (p.hi - p.lo)) >= -1e-9,
                        "spectral density must be nonnegative");
        }
        require(std::abs(total_mass() - 1.0) <= 1e-10,
                "spectral measure must have total mass 1 within 1e-10");
    }
};

// The nonincreasing spectral function phi(t) = integral of s^{-1} nu(ds)
// over (t, 1]; a point mass at alpha contributes 1/alpha on (0, alpha).
class SpectralFunction {
  public:
    explicit SpectralFunction(SpectralMeasure nu) : nu_(std::move(nu)) {}

    double operator()(double t) const {
        require(t > 0.0 && t <= 1.0, "spectral function argument must lie in (0,1]");
        double phi = 0.0;
        for (const auto& a : nu_.atoms)
            if (a.alpha > t) phi += a.mass / a.alpha;
        for (const auto& p : nu_.pieces) {
            double lo = std::max(t, p.lo), hi = p.hi;
            if (hi > lo) phi += integral_over_s(p.coeffs, lo, hi);
        }
        return phi;
    }

    // Exact integral of phi over [a, b].
    double integral(double a, double b) const {
        require(0.0 <= a && a <= b && b <= 1.0, "phi integral needs 0 <= a <= b <= 1");
        if (a == b) return 0.0;
        double total = 0.0;
        for (const auto& at : nu_.atoms) {
            double hi = std::min(b, at.alpha);
            if (hi > a) total += (at.mass / at.alpha) * (hi - a);
        }
        for (const auto& p : nu_.pieces) total += piece_phi_integral(p, a, b);
        return total;
    }

    std::vector<double> breakpoints() const {
        std::vector<double> b;
        for (const auto& a : nu_.atoms) b.push_back(a.alpha);
        for (const auto& p : nu_.pieces) {
            b.push_back(p.lo);
            b.push_back(p.hi);
        }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return b;
    }

  private:
    // integral of p(s)/s over [lo, hi], closed form with a log term
    static double integral_over_s(const std::vector<double>& c, double lo, double hi) {
        double r = 0.0;
        if (!c.empty() && c[0] != 0.0) r += c[0] * (std::log(hi) - std::log(lo));
        for (size_t j = 1; j < c.size(); ++j)
            r += c[j] * (std::pow(hi, double(j)) - std::pow(lo, double(j))) / double(j);
        return r;
    }

    // integral over t in [a,b] of integral over s in (max(t,lo), hi] of p(s)/s ds
    double piece_phi_integral(const SpectralMeasure::DensityPiece& p, double a, double b) const {
        double total = 0.0;
        // region t <= lo: constant value
        double t0 = std::max(a, 0.0), t1 = std::min(b, p.lo);
        if (t1 > t0) total += (t1 - t0) * integral_over_s(p.coeffs, p.lo, p.hi);
        // region t in (lo, hi): integrate G(t) = H(hi) - H(t) where H' = p(s)/s
        double u0 = std::max(a, p.lo), u1 = std::min(b, p.hi);
        if (u1 > u0) {
            auto H = [&](double s) {
                double r = 0.0;
                if (!p.coeffs.empty() && p.coeffs[0] != 0.0) r += p.coeffs[0] * std::log(s);
                for (size_t j = 1; j < p.coeffs.size(); ++j)
                    r += p.coeffs[j] * std::pow(s, double(j)) / double(j);
                return r;
            };
            auto H_antider = [&](double s) {
                // antiderivative of H: c0 (s ln s - s) + sum c_j s^{j+1}/(j(j+1))
                if (s <= 0.0) return 0.0;
                double r = 0.0;
                if (!p.coeffs.empty() && p.coeffs[0] != 0.0)
                    r += p.coeffs[0] * (s * std::log(s) - s);
                for (size_t j = 1; j < p.coeffs.size(); ++j)
                    r += p.coeffs[j] * std::pow(s, double(j + 1)) / double(j * (j + 1));
                return r;
            };
            total += (u1 - u0) * H(p.hi) - (H_antider(u1) - H_antider(u0));
        }
        return total;
    }

    SpectralMeasure nu_;
};

}  // namespace subex

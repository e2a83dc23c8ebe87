#pragma once

// Shared test helpers: exact rational cross-ratio arithmetic, closed-form
// oracles independent of the library code paths, and random samplers.

#include <numeric>
#include <random>
#include <vector>

#include "linkage/arm.hpp"
#include "linkage/geometry.hpp"
#include "linkage/quad.hpp"

namespace testsupport {

using linkage::Complex;

// ---------------------------------------------------------------------------
// Exact Gaussian-rational arithmetic, enough to evaluate cross-ratios of
// small-integer points without floating error.
// ---------------------------------------------------------------------------

struct Frac {
    long long n = 0, d = 1;

    static Frac of(long long num, long long den = 1) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        return g ? Frac{num / g, den / g} : Frac{0, 1};
    }
    Frac operator+(Frac o) const { return of(n * o.d + o.n * d, d * o.d); }
    Frac operator-(Frac o) const { return of(n * o.d - o.n * d, d * o.d); }
    Frac operator*(Frac o) const { return of(n * o.n, d * o.d); }
    Frac operator/(Frac o) const { return of(n * o.d, d * o.n); }
    double value() const { return double(n) / double(d); }
};

struct GRat {
    Frac re, im;

    static GRat of(long long reN, long long imN, long long den = 1) {
        return {Frac::of(reN, den), Frac::of(imN, den)};
    }
    GRat operator+(GRat o) const { return {re + o.re, im + o.im}; }
    GRat operator-(GRat o) const { return {re - o.re, im - o.im}; }
    GRat operator*(GRat o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GRat operator/(GRat o) const {
        const Frac n2 = o.re * o.re + o.im * o.im;
        const GRat conj{o.re, Frac::of(0) - o.im};
        const GRat prod = *this * conj;
        return {prod.re / n2, prod.im / n2};
    }
    Complex value() const { return {re.value(), im.value()}; }
};

/// Exact [p,q; z,w] for rational points; the independent route for the
/// hand-derived cross-ratio values.
inline GRat rational_cross_ratio(GRat p, GRat q, GRat z, GRat w) {
    return ((z - p) * (w - q)) / ((z - q) * (w - p));
}

// ---------------------------------------------------------------------------
// Closed-form preimages of the arm uniformizer in the chart at infinity.
// Solving r_inverse = w reduces to a line/unit-circle intersection in
// u = e^{i phi}, so there are at most two preimages; v = e^{i eta} follows.
// ---------------------------------------------------------------------------

inline std::vector<linkage::TorusPoint> arm_preimages_closed_form(
    const linkage::ArmLinkage& l, Complex w) {
    const Complex Z = -(l.a * l.c / l.b) * w;
    const Complex kappa = 2.0 * l.a * l.b + 2.0 * l.c * std::conj(Z);
    const double m = std::norm(Z) + l.c * l.c - l.a * l.a - l.b * l.b;
    const double K = std::abs(kappa);
    std::vector<linkage::TorusPoint> out;
    if (K < 1e-14) return out;
    const double x = m / K;
    if (std::abs(x) > 1.0) return out;
    const double chi = std::arg(kappa);
    for (double sgn : {+1.0, -1.0}) {
        const double phi = linkage::mod_two_pi(-chi + sgn * std::acos(x));
        const Complex u = std::exp(Complex(0.0, phi));
        const Complex den = Z - l.c * u;
        if (std::abs(den) < 1e-12) continue;
        const Complex v = u * (l.a + l.b * u) / den;
        if (std::abs(std::abs(v) - 1.0) > 1e-8) continue;
        out.push_back({phi, linkage::mod_two_pi(std::arg(v))});
        if (std::abs(x) >= 1.0 - 1e-12) break;  // tangency: one preimage
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random samplers. Linkages are kept away from the degenerate strata so the
// traced-curve contract applies.
// ---------------------------------------------------------------------------

inline linkage::QuadLinkage random_quad(std::mt19937_64& rng, double margin = 0.05) {
    std::uniform_real_distribution<double> U(0.5, 3.0);
    for (;;) {
        const linkage::QuadLinkage l(U(rng), U(rng), U(rng), U(rng));
        if (2.0 * l.max_side() > l.perimeter() - margin) continue;
        bool ok = true;
        for (double s : signed_sums(l))
            if (std::abs(s) < margin) ok = false;
        if (ok) return l;
    }
}

inline linkage::QuadLinkage random_one_component(std::mt19937_64& rng) {
    for (;;) {
        const linkage::QuadLinkage l = random_quad(rng);
        if (grashof_signs(l).product() > 0.0) return l;
    }
}

inline linkage::QuadLinkage random_two_component(std::mt19937_64& rng) {
    for (;;) {
        const linkage::QuadLinkage l = random_quad(rng);
        if (grashof_signs(l).product() < 0.0) return l;
    }
}

inline linkage::ArmLinkage random_arm(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.5, 3.0);
    return {U(rng), U(rng), U(rng)};
}

inline linkage::ArmLinkage random_generic_arm(std::mt19937_64& rng,
                                              double margin = 0.05) {
    for (;;) {
        const linkage::ArmLinkage l = random_arm(rng);
        const auto t = linkage::aligned_distances(l);
        bool ok = true;
        for (int i = 0; i < 4; ++i) {
            if (i > 0 && t[i] < margin) ok = false;
            for (int j = i + 1; j < 4; ++j)
                if (std::abs(t[i] - t[j]) < margin) ok = false;
        }
        if (ok) return l;
    }
}

inline linkage::TorusPoint random_torus_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, linkage::kTwoPi);
    return {U(rng), U(rng)};
}

/// Four random points with pairwise separation, for stable cross-ratios.
inline std::array<Complex, 4> random_separated_points(std::mt19937_64& rng,
                                                      double minDist = 0.3) {
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (;;) {
        std::array<Complex, 4> pts;
        for (auto& p : pts) p = {U(rng), U(rng)};
        bool ok = true;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (std::abs(pts[i] - pts[j]) < minDist) ok = false;
        if (ok) return pts;
    }
}

/// Largest distance from any point of `from` to its nearest point of `to`.
inline double directed_distance(const std::vector<Complex>& from,
                                const std::vector<Complex>& to) {
    double worst = 0.0;
    for (Complex p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (Complex q : to) best = std::min(best, std::abs(p - q));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace testsupport

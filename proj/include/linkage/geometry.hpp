#pragma once

// Geometry of 4-vertex configurations in the extended complex plane:
// cross-ratio, uniformizer, vertex angles and signed area.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace linkage {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle to [0, 2*pi).
inline double mod_two_pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Reduce an angle to (-pi, pi].
inline double wrap_pi(double x) {
    double r = mod_two_pi(x);
    return r > kPi ? r - kTwoPi : r;
}

/// Distance between two angles on the circle.
inline double angle_dist(double x, double y) { return std::abs(wrap_pi(x - y)); }

/// Violated hard precondition: malformed lengths, nonexistent linkage, bad range.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the generic/non-degenerate regime an operation requires.
class GenericityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point of the extended complex plane (Riemann sphere).
class ExtendedComplex {
public:
    ExtendedComplex() = default;
    ExtendedComplex(Complex v) : value_(v) {}
    ExtendedComplex(double re, double im) : value_(re, im) {}

    static ExtendedComplex infinity() {
        ExtendedComplex e;
        e.infinite_ = true;
        return e;
    }

    bool is_infinity() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    Complex value() const {
        if (infinite_) throw InvalidInput("value() called on the point at infinity");
        return value_;
    }

private:
    Complex value_{0.0, 0.0};  // meaningless when infinite_
    bool infinite_ = false;
};

enum class ConfigKind { Closed, Open };

/// Four labelled vertices in the plane. For Closed configurations the side
/// lengths |v2-v1|, |v3-v2|, |v4-v3|, |v1-v4| are the linkage lengths.
struct PlanarConfig {
    Complex v1, v2, v3, v4;
    ConfigKind kind = ConfigKind::Closed;

    /// Largest pairwise vertex distance; used to scale tolerances.
    double scale() const {
        double s = 0.0;
        const Complex vs[4] = {v1, v2, v3, v4};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) s = std::max(s, std::abs(vs[i] - vs[j]));
        return s;
    }
};

/// True when no three of the four points coincide (exact comparison).
inline bool no_three_coincide(Complex p, Complex q, Complex z, Complex w) {
    const Complex a[4] = {p, q, z, w};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                if (a[i] == a[j] && a[j] == a[k]) return false;
    return true;
}

inline bool is_valid_config(const PlanarConfig& V) {
    return no_three_coincide(V.v1, V.v2, V.v3, V.v4);
}

/// Angles at the vertices v2 and v4:
///   alpha = arg((v3-v2)/(v1-v2)),  gamma = arg((v1-v4)/(v3-v4)),
/// both reduced to [0, 2*pi).
struct AnglePair {
    double alpha;
    double gamma;
};

/// Cross-ratio [p,q; z,w] = ((z-p)/(z-q)) / ((w-p)/(w-q)).
///
/// A vanishing denominator with nonzero numerator maps to the point at
/// infinity; the cutoff is |denominator| <= eps * scale with scale the larger
/// of the two distance products. Coinciding pairs give the values 0, 1, inf.
inline ExtendedComplex cross_ratio(Complex p, Complex q, Complex z, Complex w,
                                   double eps = 1e-12) {
    if (!no_three_coincide(p, q, z, w))
        throw InvalidInput("cross_ratio: three of the four points coincide");
    const Complex num = (z - p) * (w - q);
    const Complex den = (z - q) * (w - p);
    const double scale =
        std::max(std::abs(z - p) * std::abs(w - q), std::abs(z - q) * std::abs(w - p));
    if (std::abs(den) <= eps * scale) return ExtendedComplex::infinity();
    return ExtendedComplex(num / den);
}

/// Cross-ratio of a configuration in vertex order: [v1,v2; v3,v4].
inline ExtendedComplex config_cross_ratio(const PlanarConfig& V) {
    return cross_ratio(V.v1, V.v2, V.v3, V.v4);
}

/// Uniformizer R = [v1,v3; v2,v4]; satisfies Cr(V) = 1 - R(V).
inline ExtendedComplex uniformizer(const PlanarConfig& V) {
    return cross_ratio(V.v1, V.v3, V.v2, V.v4);
}

inline AnglePair angles(const PlanarConfig& V) {
    if (V.v1 == V.v2 || V.v2 == V.v3 || V.v3 == V.v4 || V.v4 == V.v1)
        throw InvalidInput("angles: coinciding adjacent vertices");
    return {mod_two_pi(std::arg((V.v3 - V.v2) / (V.v1 - V.v2))),
            mod_two_pi(std::arg((V.v1 - V.v4) / (V.v3 - V.v4)))};
}

/// Shoelace signed area of the vertex 4-cycle. Invariant under
/// orientation-preserving isometries, negated by conjugation.
inline double signed_area(const PlanarConfig& V) {
    const Complex vs[4] = {V.v1, V.v2, V.v3, V.v4};
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += std::imag(std::conj(vs[k]) * vs[(k + 1) % 4]);
    return 0.5 * s;
}

/// Mirror image (complex conjugate of every vertex).
inline PlanarConfig conjugated(const PlanarConfig& V) {
    return {std::conj(V.v1), std::conj(V.v2), std::conj(V.v3), std::conj(V.v4), V.kind};
}

/// Representative with v1 = 0 and v2 on the positive real axis.
inline PlanarConfig canonical(const PlanarConfig& V) {
    const Complex d = V.v2 - V.v1;
    const double len = std::abs(d);
    if (len == 0.0) throw InvalidInput("canonical: v1 and v2 coincide");
    const Complex rot = std::conj(d / len);
    auto map = [&](Complex z) { return (z - V.v1) * rot; };
    return {map(V.v1), map(V.v2), map(V.v3), map(V.v4), V.kind};
}

}  // namespace linkage

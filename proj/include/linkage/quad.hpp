#pragma once

// Closed 4-bar linkages: moduli-space tracing, topology classification,
// uniformizer image arcs, fiber solving, cyclic configurations, fold
// certificates and mapping degree.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "linkage/geometry.hpp"

namespace linkage {

/// Closed 4-bar linkage with side lengths a, b, c, d.
struct QuadLinkage {
    double a, b, c, d;

    QuadLinkage(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d)) ||
            a <= 0.0 || b <= 0.0 || c <= 0.0 || d <= 0.0)
            throw InvalidInput("QuadLinkage: side lengths must be positive finite reals");
    }

    double perimeter() const { return a + b + c + d; }
    double max_side() const { return std::max(std::max(a, b), std::max(c, d)); }

    /// A planar realization exists iff the longest side does not exceed the
    /// sum of the other three.
    bool exists() const { return 2.0 * max_side() <= perimeter(); }
};

/// The sign data governing connectedness and surjectivity, plus the distance
/// from the long-aligned stratum.
struct GrashofSigns {
    double p1;  // a + b - c - d
    double p2;  // a - b + c - d
    double p3;  // a - b - c + d
    double s;   // a + b + c + d
    double longAligned;  // min |a±b±c±d| over the three-minus sign patterns

    double product() const { return p1 * p2 * p3; }
};

inline GrashofSigns grashof_signs(const QuadLinkage& l) {
    GrashofSigns g;
    g.p1 = l.a + l.b - l.c - l.d;
    g.p2 = l.a - l.b + l.c - l.d;
    g.p3 = l.a - l.b - l.c + l.d;
    g.s = l.a + l.b + l.c + l.d;
    g.longAligned = std::min(
        std::min(std::abs(l.a - l.b - l.c - l.d), std::abs(-l.a + l.b - l.c - l.d)),
        std::min(std::abs(-l.a - l.b + l.c - l.d), std::abs(-l.a - l.b - l.c + l.d)));
    return g;
}

/// All eight signed sums a ± b ± c ± d (up to overall sign).
inline std::array<double, 8> signed_sums(const QuadLinkage& l) {
    return {l.a + l.b + l.c + l.d, l.a + l.b + l.c - l.d, l.a + l.b - l.c + l.d,
            l.a - l.b + l.c + l.d, l.a + l.b - l.c - l.d, l.a - l.b + l.c - l.d,
            l.a - l.b - l.c + l.d, l.a - l.b - l.c - l.d};
}

/// Exact test: all eight signed sums nonzero. Degeneracy is a property of the
/// given numbers, so no tolerance is applied.
inline bool is_nondegenerate(const QuadLinkage& l) {
    for (double s : signed_sums(l))
        if (s == 0.0) return false;
    return true;
}

inline bool is_long_aligned(const QuadLinkage& l) {
    return grashof_signs(l).longAligned == 0.0;
}

inline bool is_short_aligned(const QuadLinkage& l) {
    const GrashofSigns g = grashof_signs(l);
    return g.p1 == 0.0 || g.p2 == 0.0 || g.p3 == 0.0;
}

// Kite and parallelogram tests accept the cyclic relabelings; vertex labels
// are a choice, the shapes are not.
inline bool is_kite(const QuadLinkage& l) {
    return (l.a == l.b && l.c == l.d) || (l.b == l.c && l.d == l.a);
}

inline bool is_parallelogram(const QuadLinkage& l) { return l.a == l.c && l.b == l.d; }

inline bool is_rhomboid(const QuadLinkage& l) {
    return l.a == l.b && l.b == l.c && l.c == l.d;
}

enum class ModuliTopology {
    Circle,
    TwoCircles,
    BouquetTwoCircles,
    TwoCirclesTwoPoints,
    ThreeCirclesChain,
    SinglePoint,
};

inline const char* to_string(ModuliTopology t) {
    switch (t) {
        case ModuliTopology::Circle: return "Circle";
        case ModuliTopology::TwoCircles: return "TwoCircles";
        case ModuliTopology::BouquetTwoCircles: return "BouquetTwoCircles";
        case ModuliTopology::TwoCirclesTwoPoints: return "TwoCirclesTwoPoints";
        case ModuliTopology::ThreeCirclesChain: return "ThreeCirclesChain";
        case ModuliTopology::SinglePoint: return "SinglePoint";
    }
    return "?";
}

inline ModuliTopology classify_topology(const QuadLinkage& l) {
    if (!l.exists()) throw InvalidInput("classify_topology: no planar realization");
    if (is_long_aligned(l)) return ModuliTopology::SinglePoint;
    if (is_rhomboid(l)) return ModuliTopology::ThreeCirclesChain;
    if (is_kite(l) || is_parallelogram(l)) return ModuliTopology::TwoCirclesTwoPoints;
    if (is_short_aligned(l)) return ModuliTopology::BouquetTwoCircles;
    return grashof_signs(l).product() < 0.0 ? ModuliTopology::TwoCircles
                                            : ModuliTopology::Circle;
}

/// Surjectivity of the uniformizer onto its image circle.
inline bool is_surjective(const QuadLinkage& l) {
    if (!is_nondegenerate(l))
        throw GenericityError("is_surjective: degenerate linkage (some a±b±c±d = 0)");
    return grashof_signs(l).product() < 0.0;
}

/// Connectedness of the planar moduli space.
inline bool is_connected(const QuadLinkage& l) { return grashof_signs(l).product() >= 0.0; }

// --------------------------------------------------------------------------
// The moduli curve g(alpha, gamma) = 0 with
//   g = a^2 + b^2 - 2ab cos(alpha) - c^2 - d^2 + 2cd cos(gamma).
// On the curve cos(gamma) is the affine function of cos(alpha) below.
// --------------------------------------------------------------------------

inline double moduli_constraint(const QuadLinkage& l, double alpha, double gamma) {
    return l.a * l.a + l.b * l.b - 2.0 * l.a * l.b * std::cos(alpha) - l.c * l.c -
           l.d * l.d + 2.0 * l.c * l.d * std::cos(gamma);
}

// cos(gamma) = gammaCosOffset + gammaCosAmplitude * cos(alpha)
inline double gamma_cos_offset(const QuadLinkage& l) {
    return (l.c * l.c + l.d * l.d - l.a * l.a - l.b * l.b) / (2.0 * l.c * l.d);
}
inline double gamma_cos_amplitude(const QuadLinkage& l) {
    return (l.a * l.b) / (l.c * l.d);
}
inline double gamma_cosine(const QuadLinkage& l, double alpha) {
    return gamma_cos_offset(l) + gamma_cos_amplitude(l) * std::cos(alpha);
}

/// All gamma in [0, 2*pi) solving the moduli constraint at the given alpha.
/// Two branches ±arccos, coalescing where cos(gamma) reaches ±1.
inline std::vector<double> gamma_branches(const QuadLinkage& l, double alpha) {
    const double tol = 1e-12;
    const double x = gamma_cosine(l, alpha);
    if (x > 1.0 + tol || x < -1.0 - tol) return {};
    if (x >= 1.0 - tol) return {0.0};
    if (x <= -1.0 + tol) return {kPi};
    const double g = std::acos(x);
    return {g, kTwoPi - g};
}

/// A point of the moduli curve: alpha plus the branch sign of
/// gamma = ±arccos(...), and the component the point belongs to.
struct ModuliPoint {
    double alpha = 0.0;
    int branch = +1;     // +1: gamma in [0,pi], -1: gamma in (pi,2pi)
    int component = 0;
};

inline double gamma_of(const QuadLinkage& l, const ModuliPoint& p) {
    const double x = std::clamp(gamma_cosine(l, p.alpha), -1.0, 1.0);
    const double g = std::acos(x);
    return p.branch >= 0 ? g : mod_two_pi(kTwoPi - g);
}

/// Canonical planar realization of a solution of the moduli constraint:
/// v1 = 0, v2 = a on the real axis, v3 = a - b e^{i alpha}; v4 is the circle
/// intersection whose vertex angles reproduce (alpha, gamma).
inline PlanarConfig embed_config(const QuadLinkage& l, double alpha, double gamma) {
    const double scale = l.perimeter();
    if (std::abs(moduli_constraint(l, alpha, gamma)) > 1e-6 * scale * scale)
        throw InvalidInput("embed_config: (alpha, gamma) is not on the moduli curve");

    const Complex v1{0.0, 0.0};
    const Complex v2{l.a, 0.0};
    const Complex v3 = v2 - l.b * std::exp(Complex(0.0, alpha));
    const double diag = std::abs(v3);
    if (diag < 1e-12 * scale)
        throw InvalidInput("embed_config: zero diagonal, no angular placement for v4");

    double cosT = (l.d * l.d + diag * diag - l.c * l.c) / (2.0 * l.d * diag);
    if (std::abs(cosT) > 1.0 + 1e-9)
        throw InvalidInput("embed_config: constraint residual above tolerance");
    cosT = std::clamp(cosT, -1.0, 1.0);
    const double theta = std::acos(cosT);
    const double base = std::arg(v3);

    PlanarConfig best{};
    double bestErr = std::numeric_limits<double>::infinity();
    for (double sgn : {+1.0, -1.0}) {
        const Complex v4 = l.d * std::exp(Complex(0.0, base + sgn * theta));
        const PlanarConfig V{v1, v2, v3, v4, ConfigKind::Closed};
        const AnglePair ang = angles(V);
        const double err = angle_dist(ang.gamma, gamma) + angle_dist(ang.alpha, alpha);
        if (err < bestErr) {
            bestErr = err;
            best = V;
        }
    }

    const double tol = 1e-9 * scale;
    if (std::abs(std::abs(best.v2 - best.v1) - l.a) > tol ||
        std::abs(std::abs(best.v3 - best.v2) - l.b) > tol ||
        std::abs(std::abs(best.v4 - best.v3) - l.c) > tol ||
        std::abs(std::abs(best.v1 - best.v4) - l.d) > tol || bestErr > 1e-6)
        throw InvalidInput("embed_config: constraint residual above tolerance");
    return best;
}

inline PlanarConfig embed_point(const QuadLinkage& l, const ModuliPoint& p) {
    return embed_config(l, p.alpha, gamma_of(l, p));
}

// Interval structure of the valid alpha set, decided by where the affine
// cosine model leaves [-1, 1].
enum class ModuliShape { FullCircle, ArcAroundZero, ArcAroundPi, TwoArcs };

inline ModuliShape moduli_shape(const QuadLinkage& l) {
    const bool zeroBlocked = gamma_cosine(l, 0.0) > 1.0;   // excludes alpha near 0
    const bool piBlocked = gamma_cosine(l, kPi) < -1.0;    // excludes alpha near pi
    if (!zeroBlocked && !piBlocked) return ModuliShape::FullCircle;
    if (!zeroBlocked) return ModuliShape::ArcAroundZero;
    if (!piBlocked) return ModuliShape::ArcAroundPi;
    return ModuliShape::TwoArcs;
}

namespace detail {

// alpha bound where cos(gamma) reaches `level` (+1 or -1)
inline double alpha_at_level(const QuadLinkage& l, double level) {
    const double x = (level - gamma_cos_offset(l)) / gamma_cos_amplitude(l);
    return std::acos(std::clamp(x, -1.0, 1.0));
}

// Closed loop over one alpha-arc [lo, hi]: forward on the + branch, back on
// the - branch, branch switches exactly at the glue endpoints. gamma behaves
// like sqrt(distance to the glue), so the alpha samples are cosine-clustered
// toward the endpoints to keep the image gaps at grid scale.
inline std::vector<ModuliPoint> arc_loop(double lo, double hi, int samples,
                                         int component) {
    const int m = std::max(8, samples);
    std::vector<double> alphas(m + 1);
    for (int j = 0; j <= m; ++j)
        alphas[j] = lo + (hi - lo) * 0.5 * (1.0 - std::cos(kPi * j / m));
    std::vector<ModuliPoint> loop;
    loop.reserve(2 * m);
    for (int j = 0; j <= m; ++j) loop.push_back({mod_two_pi(alphas[j]), +1, component});
    for (int j = m - 1; j >= 1; --j)
        loop.push_back({mod_two_pi(alphas[j]), -1, component});
    return loop;
}

inline std::vector<ModuliPoint> conjugate_loop(const std::vector<ModuliPoint>& loop,
                                               int component) {
    std::vector<ModuliPoint> out;
    out.reserve(loop.size());
    for (const ModuliPoint& p : loop)
        out.push_back({mod_two_pi(-p.alpha), -p.branch, component});
    return out;
}

}  // namespace detail

/// Trace the moduli curve with roughly n alpha-samples per branch. Components
/// are returned as closed cyclic sequences; in the two-component case the
/// second component is the conjugate of the first, traversed so that the two
/// uniformizer windings cancel.
inline std::vector<std::vector<ModuliPoint>> trace_moduli(const QuadLinkage& l,
                                                          int n = 1024) {
    if (!l.exists()) throw InvalidInput("trace_moduli: no planar realization");
    if (!is_nondegenerate(l))
        throw GenericityError("trace_moduli: degenerate linkage (some a±b±c±d = 0)");
    if (n < 16) throw InvalidInput("trace_moduli: need n >= 16");

    switch (moduli_shape(l)) {
        case ModuliShape::FullCircle: {
            std::vector<ModuliPoint> plus, minus;
            plus.reserve(n);
            for (int k = 0; k < n; ++k) plus.push_back({kTwoPi * k / n, +1, 0});
            minus = detail::conjugate_loop(plus, 1);
            return {plus, minus};
        }
        case ModuliShape::ArcAroundZero: {
            const double ag = detail::alpha_at_level(l, -1.0);
            return {detail::arc_loop(-ag, ag, n, 0)};
        }
        case ModuliShape::ArcAroundPi: {
            const double as = detail::alpha_at_level(l, +1.0);
            return {detail::arc_loop(as, kTwoPi - as, n, 0)};
        }
        case ModuliShape::TwoArcs: {
            const double as = detail::alpha_at_level(l, +1.0);
            const double ag = detail::alpha_at_level(l, -1.0);
            auto first = detail::arc_loop(as, ag, n, 0);
            auto second = detail::conjugate_loop(first, 1);
            return {first, second};
        }
    }
    return {};
}

/// F_tau = A^2 + B^2 - C^2 for the fiber equation at argument tau:
/// 4a²b² + 4c²d² - (a²+b²-c²-d²)² - 8abcd cos(tau).
inline double f_tau(const QuadLinkage& l, double tau) {
    const double C = l.a * l.a + l.b * l.b - l.c * l.c - l.d * l.d;
    return 4.0 * l.a * l.a * l.b * l.b + 4.0 * l.c * l.c * l.d * l.d - C * C -
           8.0 * l.a * l.b * l.c * l.d * std::cos(tau);
}

namespace detail {

inline int component_of(const QuadLinkage& l, double alpha, double gamma) {
    switch (moduli_shape(l)) {
        case ModuliShape::FullCircle:
            return mod_two_pi(gamma) <= kPi ? 0 : 1;
        case ModuliShape::TwoArcs:
            return mod_two_pi(alpha) <= kPi ? 0 : 1;
        default:
            return 0;
    }
}

inline ModuliPoint make_point(const QuadLinkage& l, double alpha, double gamma) {
    const double g = mod_two_pi(gamma);
    const int branch = g <= kPi ? +1 : -1;
    return {mod_two_pi(alpha), branch, component_of(l, alpha, g)};
}

}  // namespace detail

/// Solve the fiber over arg R = tau: A sin(gamma) + B cos(gamma) = C with
///   A = 2ab sin(tau), B = 2cd - 2ab cos(tau), C = c² + d² - a² - b²,
/// completed to (alpha, gamma) via alpha = -tau - gamma. Solution count is
/// 0 / 1 / 2 by the sign of F_tau; |C|/sqrt(A²+B²) within 1e-10 of 1 counts
/// as the tangency case.
inline std::vector<ModuliPoint> solve_tau_fiber(const QuadLinkage& l, double tau) {
    const double A = 2.0 * l.a * l.b * std::sin(tau);
    const double B = 2.0 * l.c * l.d - 2.0 * l.a * l.b * std::cos(tau);
    const double C = l.c * l.c + l.d * l.d - l.a * l.a - l.b * l.b;
    const double K = std::hypot(A, B);
    if (K < 1e-300) return {};

    const double tol = 1e-10;
    const double x = C / K;
    if (std::abs(x) > 1.0 + tol) return {};

    const double phi0 = std::atan2(A, B);
    std::vector<double> gammas;
    if (std::abs(x) >= 1.0 - tol) {
        gammas.push_back(phi0 + (x >= 0.0 ? 0.0 : kPi));
    } else {
        const double delta = std::acos(x);
        gammas.push_back(phi0 + delta);
        gammas.push_back(phi0 - delta);
    }

    std::vector<ModuliPoint> out;
    const double scale = l.perimeter();
    for (double gamma : gammas) {
        const double alpha = mod_two_pi(-tau - gamma);
        if (std::abs(moduli_constraint(l, alpha, gamma)) > 1e-7 * scale * scale) continue;
        out.push_back(detail::make_point(l, alpha, gamma));
    }
    std::sort(out.begin(), out.end(), [&](const ModuliPoint& u, const ModuliPoint& v) {
        return gamma_of(l, u) < gamma_of(l, v);
    });
    return out;
}

/// Circle arc {center + radius e^{i theta} : theta in [argLo, argHi]}.
/// The interval is counterclockwise; a full circle is [0, 2pi]. argHi may
/// exceed 2pi when the arc crosses angle 0 (the Cr-image does).
struct CircleArc {
    Complex center{0.0, 0.0};
    double radius = 0.0;
    double argLo = 0.0;
    double argHi = 0.0;
    bool conjSymmetric = true;

    bool full() const { return argHi - argLo >= kTwoPi - 1e-12; }
    double span() const { return argHi - argLo; }

    bool contains_angle(double theta, double tol = 1e-12) const {
        if (full()) return true;
        return mod_two_pi(theta - argLo) <= argHi - argLo + tol;
    }

    Complex point_at(double theta) const {
        return center + radius * std::exp(Complex(0.0, theta));
    }
};

/// Half-opening of the image arc: F_tau >= 0 exactly for tau* <= tau <= 2pi - tau*.
inline double tau_star(const QuadLinkage& l) {
    const double C = l.a * l.a + l.b * l.b - l.c * l.c - l.d * l.d;
    const double x = (4.0 * l.a * l.a * l.b * l.b + 4.0 * l.c * l.c * l.d * l.d - C * C) /
                     (8.0 * l.a * l.b * l.c * l.d);
    return std::acos(std::clamp(x, -1.0, 1.0));
}

/// Image of the uniformizer: circle of radius ac/bd about 0, full iff the
/// linkage is surjective, else the conjugation-symmetric arc through -ac/bd.
inline CircleArc r_image(const QuadLinkage& l) {
    if (!l.exists()) throw InvalidInput("r_image: no planar realization");
    const double radius = (l.a * l.c) / (l.b * l.d);
    if (is_surjective(l)) return {Complex{0, 0}, radius, 0.0, kTwoPi, true};
    const double ts = tau_star(l);
    return {Complex{0, 0}, radius, ts, kTwoPi - ts, true};
}

/// Image of the cross-ratio map: r_image pushed through w -> 1 - w. Same
/// radius about center 1; the arc is the reflected interval, crossing angle 0.
inline CircleArc cr_image(const QuadLinkage& l) {
    const CircleArc r = r_image(l);
    if (r.full()) return {Complex{1, 0}, r.radius, 0.0, kTwoPi, true};
    return {Complex{1, 0}, r.radius, kPi + r.argLo, 3.0 * kPi - r.argLo, true};
}

/// All configurations with real cross-ratio: the fibers over tau = 0
/// (self-intersecting cyclic) and tau = pi, closed under conjugation.
inline std::vector<PlanarConfig> cyclic_configurations(const QuadLinkage& l) {
    if (!l.exists()) throw InvalidInput("cyclic_configurations: no planar realization");
    if (!is_nondegenerate(l))
        throw GenericityError("cyclic_configurations: degenerate linkage");
    std::vector<PlanarConfig> out;
    for (double tau : {0.0, kPi}) {
        for (const ModuliPoint& p : solve_tau_fiber(l, tau)) {
            const PlanarConfig V = embed_point(l, p);
            const ExtendedComplex cr = config_cross_ratio(V);
            if (cr.is_finite() && std::abs(std::imag(cr.value())) > 1e-9)
                throw InvalidInput("cyclic_configurations: non-real cross-ratio");
            out.push_back(V);
        }
    }
    return out;
}

/// A critical configuration of arg R together with the Lagrange data
/// certifying the fold: lambdaInv = 2ab sin(alpha) and the constrained second
/// derivative -2ab sin(alpha) (2ab cos(alpha) - 2cd cos(gamma)).
struct FoldCertificate {
    ModuliPoint point;
    double lambdaInv = 0.0;
    double secondDeriv = 0.0;
};

/// Critical points of arg R on the moduli curve: 2ab sin(alpha) +
/// 2cd sin(gamma) = 0, i.e. zero signed area. Exactly two in the
/// one-component case, none in the two-component case.
inline std::vector<FoldCertificate> critical_points(const QuadLinkage& l) {
    if (!l.exists()) throw InvalidInput("critical_points: no planar realization");
    if (!is_nondegenerate(l)) throw GenericityError("critical_points: degenerate linkage");

    const double A0 = gamma_cos_offset(l);
    const double B0 = gamma_cos_amplitude(l);
    // Eliminating gamma gives cos(alpha) = (1 - A0² - B0²) / (2 A0 B0);
    // A0 = 0 forces B0 = 1 which only happens for degenerate lengths.
    if (A0 == 0.0) return {};
    const double x = (1.0 - A0 * A0 - B0 * B0) / (2.0 * A0 * B0);
    if (std::abs(x) > 1.0) return {};

    const double ratio = (l.a * l.b) / (l.c * l.d);
    std::vector<FoldCertificate> out;
    for (double alpha : {std::acos(std::clamp(x, -1.0, 1.0)),
                         kTwoPi - std::acos(std::clamp(x, -1.0, 1.0))}) {
        const double sinG = -ratio * std::sin(alpha);
        const double cosG = gamma_cosine(l, alpha);
        const double gamma = mod_two_pi(std::atan2(sinG, cosG));
        FoldCertificate cert;
        cert.point = detail::make_point(l, alpha, gamma);
        cert.lambdaInv = 2.0 * l.a * l.b * std::sin(alpha);
        cert.secondDeriv = -2.0 * l.a * l.b * std::sin(alpha) *
                           (2.0 * l.a * l.b * std::cos(alpha) -
                            2.0 * l.c * l.d * std::cos(gamma));
        out.push_back(cert);
    }
    return out;
}

struct MappingDegree {
    std::vector<int> perComponent;
    int total = 0;
};

/// Winding number of arg R along each traced component; the residual of the
/// accumulated increments must be < 0.1 of a full turn.
inline MappingDegree mapping_degree(const QuadLinkage& l, int n = 1024) {
    MappingDegree result;
    for (const auto& loop : trace_moduli(l, n)) {
        double total = 0.0;
        double prev = -(loop.front().alpha + gamma_of(l, loop.front()));
        for (size_t k = 1; k <= loop.size(); ++k) {
            const ModuliPoint& p = loop[k % loop.size()];
            const double cur = -(p.alpha + gamma_of(l, p));
            total += wrap_pi(cur - prev);
            prev = cur;
        }
        const double turns = total / kTwoPi;
        const int deg = (int)std::lround(turns);
        if (std::abs(turns - deg) > 0.1)
            throw InvalidInput("mapping_degree: winding residual too large");
        result.perComponent.push_back(deg);
        result.total += deg;
    }
    return result;
}

enum class DegenerateKind { LongAligned, ShortAligned, Kite, Parallelogram, Rhomboid };

inline const char* to_string(DegenerateKind k) {
    switch (k) {
        case DegenerateKind::LongAligned: return "LongAligned";
        case DegenerateKind::ShortAligned: return "ShortAligned";
        case DegenerateKind::Kite: return "Kite";
        case DegenerateKind::Parallelogram: return "Parallelogram";
        case DegenerateKind::Rhomboid: return "Rhomboid";
    }
    return "?";
}

/// How the uniformizer behaves on a degenerate linkage's moduli space.
struct DegenerateImageReport {
    DegenerateKind kind;
    ModuliTopology topology;
    double radius = 0.0;        // ac/bd
    bool surjective = false;    // onto the full image circle
    std::optional<Complex> imagePoint;     // LongAligned: the single image value
    std::optional<Complex> collapsePoint;  // value of the collapsing circles / wedge point
    int coveringCircles = 0;    // components mapping onto the full circle
    int collapsedCircles = 0;   // components collapsing to collapsePoint
    std::string note;
};

inline DegenerateImageReport degenerate_image_report(const QuadLinkage& l) {
    if (!l.exists()) throw InvalidInput("degenerate_image_report: no planar realization");
    if (is_nondegenerate(l))
        throw InvalidInput("degenerate_image_report: non-degenerate input rejected");

    DegenerateImageReport r;
    r.radius = (l.a * l.c) / (l.b * l.d);
    if (is_long_aligned(l)) {
        r.kind = DegenerateKind::LongAligned;
        r.topology = ModuliTopology::SinglePoint;
        r.surjective = false;
        r.imagePoint = Complex{-r.radius, 0.0};
        r.note = "single aligned configuration; the image is the one point -ac/bd";
        return r;
    }
    r.surjective = true;
    r.collapsePoint = Complex{r.radius, 0.0};
    if (is_rhomboid(l)) {
        r.kind = DegenerateKind::Rhomboid;
        r.topology = ModuliTopology::ThreeCirclesChain;
        r.coveringCircles = 1;
        r.collapsedCircles = 2;
        r.note = "one circle maps 2:1 onto the image circle, two circles collapse";
    } else if (is_kite(l)) {
        r.kind = DegenerateKind::Kite;
        r.topology = ModuliTopology::TwoCirclesTwoPoints;
        r.coveringCircles = 1;
        r.collapsedCircles = 1;
        r.note = "kite circle maps 2:1 onto the image circle, the zero-diagonal "
                 "circle collapses";
    } else if (is_parallelogram(l)) {
        r.kind = DegenerateKind::Parallelogram;
        r.topology = ModuliTopology::TwoCirclesTwoPoints;
        r.coveringCircles = 1;
        r.collapsedCircles = 1;
        r.note = "parallelogram circle maps 2:1 onto the image circle, the "
                 "counter-parallelogram circle collapses";
    } else {
        r.kind = DegenerateKind::ShortAligned;
        r.topology = ModuliTopology::BouquetTwoCircles;
        r.coveringCircles = 2;
        r.collapsedCircles = 0;
        r.note = "each bouquet circle maps onto the full image circle; the wedge "
                 "point maps to the positive-real intersection (classifier-decided "
                 "stratum: every short-aligned linkage that is not a kite, "
                 "parallelogram or rhomboid is reported here)";
    }
    return r;
}

}  // namespace linkage

#pragma once

// Open 3-arm (telescopic fourth side): torus parameterization, uniformizer in
// the chart at infinity, Jacobian and critical curves, t-slicing, annulus
// image and aligned-position 2-jets.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linkage/geometry.hpp"
#include "linkage/quad.hpp"

namespace linkage {

enum class ArmCase { NoClosed, ContainsTriangle };

inline const char* to_string(ArmCase c) {
    return c == ArmCase::NoClosed ? "NoClosed" : "ContainsTriangle";
}

/// Planar robot 3-arm with link lengths a, b, c; the end-to-end distance t
/// plays the role of a telescopic fourth side.
struct ArmLinkage {
    double a, b, c;

    ArmLinkage(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
        if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)) || a <= 0.0 ||
            b <= 0.0 || c <= 0.0)
            throw InvalidInput("ArmLinkage: link lengths must be positive finite reals");
    }

    double reach() const { return a + b + c; }
    double max_link() const { return std::max(a, std::max(b, c)); }
};

inline ArmCase arm_case(const ArmLinkage& l) {
    return 2.0 * l.max_link() < l.reach() ? ArmCase::ContainsTriangle : ArmCase::NoClosed;
}

/// End-to-end distances of the aligned positions: a+b+c, |a+b-c|, |a-b+c|, |a-b-c|.
inline std::array<double, 4> aligned_distances(const ArmLinkage& l) {
    return {l.a + l.b + l.c, std::abs(l.a + l.b - l.c), std::abs(l.a - l.b + l.c),
            std::abs(l.a - l.b - l.c)};
}

/// Empty when the arm is generic; otherwise names the violated inequality.
/// Generic arms have pairwise distinct, nonzero aligned distances.
inline std::string genericity_violation(const ArmLinkage& l) {
    const auto t = aligned_distances(l);
    static const char* name[4] = {"a+b+c", "|a+b-c|", "|a-b+c|", "|a-b-c|"};
    for (int i = 1; i < 4; ++i)
        if (t[i] == 0.0) return std::string(name[i]) + " = 0 (aligned arm)";
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (t[i] == t[j])
                return std::string(name[i]) + " = " + name[j] +
                       " (coinciding aligned distances)";
    return {};
}

inline bool is_generic_arm(const ArmLinkage& l) { return genericity_violation(l).empty(); }

inline void require_generic(const ArmLinkage& l, const char* who) {
    const std::string v = genericity_violation(l);
    if (!v.empty()) throw GenericityError(std::string(who) + ": non-generic arm, " + v);
}

/// Angular coordinates on the moduli torus.
struct TorusPoint {
    double phi = 0.0;
    double eta = 0.0;
};

/// Vertices 0, a, a + b e^{i phi}, a + b e^{i phi} + c e^{i eta}.
inline PlanarConfig arm_config(const ArmLinkage& l, const TorusPoint& p) {
    const Complex v2{l.a, 0.0};
    const Complex v3 = v2 + l.b * std::exp(Complex(0.0, p.phi));
    const Complex v4 = v3 + l.c * std::exp(Complex(0.0, p.eta));
    return {Complex{0.0, 0.0}, v2, v3, v4, ConfigKind::Open};
}

/// End-to-end distance |v4 - v1| of the configuration at p.
inline double end_distance(const ArmLinkage& l, const TorusPoint& p) {
    return std::abs(l.a + l.b * std::exp(Complex(0.0, p.phi)) +
                    l.c * std::exp(Complex(0.0, p.eta)));
}

/// Uniformizer in the chart at infinity:
///   R^{-1} = (-b/(ac)) (a + b e^{i phi} + c e^{i eta}) e^{i(phi - eta)}.
/// Entire in (phi, eta); |R^{-1}| = b t / (ac) with t the end-to-end distance.
inline Complex r_inverse(const ArmLinkage& l, const TorusPoint& p) {
    const Complex s = l.a + l.b * std::exp(Complex(0.0, p.phi)) +
                      l.c * std::exp(Complex(0.0, p.eta));
    return (-l.b / (l.a * l.c)) * s * std::exp(Complex(0.0, p.phi - p.eta));
}

/// Partial derivatives (d/dphi, d/deta) of r_inverse.
inline std::pair<Complex, Complex> r_inverse_partials(const ArmLinkage& l,
                                                      const TorusPoint& p) {
    const Complex ePhi = std::exp(Complex(0.0, p.phi));
    const Complex eEta = std::exp(Complex(0.0, p.eta));
    const Complex s = l.a + l.b * ePhi + l.c * eEta;
    const Complex rot = std::exp(Complex(0.0, p.phi - p.eta));
    const Complex pre = Complex(0.0, -l.b / (l.a * l.c)) * rot;
    return {pre * (l.b * ePhi + s), pre * (l.c * eEta - s)};
}

/// ab sin(phi) + ac sin(eta) + bc sin(eta - phi); equals twice the signed
/// area of the configuration, and the Jacobian determinant of r_inverse up to
/// the constant factor (b/(ac))².
inline double jacobian(const ArmLinkage& l, const TorusPoint& p) {
    return l.a * l.b * std::sin(p.phi) + l.a * l.c * std::sin(p.eta) +
           l.b * l.c * std::sin(p.eta - p.phi);
}

// --------------------------------------------------------------------------
// Critical set: zero contour of the Jacobian on the torus, extracted by
// marching squares with wraparound and linear interpolation.
// --------------------------------------------------------------------------

namespace detail {

// Edge identifier on the n x n torus grid: direction (0 horizontal from
// (i,j) to (i+1,j), 1 vertical to (i,j+1)) packed with the node index.
inline std::int64_t edge_key(int dir, int i, int j) {
    return (static_cast<std::int64_t>(dir) << 42) |
           (static_cast<std::int64_t>(i) << 21) | static_cast<std::int64_t>(j);
}

struct ContourBuilder {
    int n;
    const std::vector<double>& vals;  // row-major: vals[j * n + i]
    std::map<std::int64_t, std::pair<double, double>> points;
    std::map<std::int64_t, std::vector<std::int64_t>> links;

    double value(int i, int j) const { return vals[(j % n) * n + (i % n)]; }

    // Crossing position on the edge between nodes u (value ju) and v (jv);
    // clamped away from the endpoints so each crossing stays on its own edge.
    std::pair<double, double> edge_point(int dir, int i, int j) {
        const double h = kTwoPi / n;
        const double j0 = value(i, j);
        const double j1 = dir == 0 ? value(i + 1, j) : value(i, j + 1);
        double t = j0 / (j0 - j1);
        t = std::clamp(t, 1e-9, 1.0 - 1e-9);
        const double x = i * h + (dir == 0 ? t * h : 0.0);
        const double y = j * h + (dir == 1 ? t * h : 0.0);
        return {mod_two_pi(x), mod_two_pi(y)};
    }

    void connect(int dirA, int ia, int ja, int dirB, int ib, int jb) {
        const std::int64_t ka = edge_key(dirA, ia % n, ja % n);
        const std::int64_t kb = edge_key(dirB, ib % n, jb % n);
        if (!points.count(ka)) points[ka] = edge_point(dirA, ia, ja);
        if (!points.count(kb)) points[kb] = edge_point(dirB, ib, jb);
        links[ka].push_back(kb);
        links[kb].push_back(ka);
    }
};

}  // namespace detail

/// Closed polylines tracing jacobian = 0 on the torus. The four aligned
/// positions always lie on the contour (their Jacobian vanishes exactly).
inline std::vector<std::vector<TorusPoint>> critical_set(const ArmLinkage& l,
                                                         int n = 512) {
    require_generic(l, "critical_set");
    if (n < 8) throw InvalidInput("critical_set: grid too small");

    std::vector<double> vals(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            vals[(size_t)j * n + i] = jacobian(l, {kTwoPi * i / n, kTwoPi * j / n});

    detail::ContourBuilder cb{n, vals, {}, {}};
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const bool sa = cb.value(i, j) > 0.0;
            const bool sb = cb.value(i + 1, j) > 0.0;
            const bool sc = cb.value(i + 1, j + 1) > 0.0;
            const bool sd = cb.value(i, j + 1) > 0.0;
            const int idx = (sa ? 1 : 0) | (sb ? 2 : 0) | (sc ? 4 : 0) | (sd ? 8 : 0);
            if (idx == 0 || idx == 15) continue;

            // edges: bottom h(i,j), right v(i+1,j), top h(i,j+1), left v(i,j)
            auto bottom = [&] { return std::array<int, 3>{0, i, j}; };
            auto right = [&] { return std::array<int, 3>{1, i + 1, j}; };
            auto top = [&] { return std::array<int, 3>{0, i, j + 1}; };
            auto left = [&] { return std::array<int, 3>{1, i, j}; };
            auto join = [&](std::array<int, 3> u, std::array<int, 3> v) {
                cb.connect(u[0], u[1], u[2], v[0], v[1], v[2]);
            };

            switch (idx) {
                case 1: join(bottom(), left()); break;
                case 2: join(bottom(), right()); break;
                case 3: join(left(), right()); break;
                case 4: join(right(), top()); break;
                case 6: join(bottom(), top()); break;
                case 7: join(left(), top()); break;
                case 8: join(top(), left()); break;
                case 9: join(bottom(), top()); break;
                case 11: join(right(), top()); break;
                case 12: join(right(), left()); break;
                case 13: join(bottom(), right()); break;
                case 14: join(bottom(), left()); break;
                case 5:
                case 10: {
                    const double center = 0.25 * (cb.value(i, j) + cb.value(i + 1, j) +
                                                  cb.value(i + 1, j + 1) + cb.value(i, j + 1));
                    const bool linkThroughCenter = (center > 0.0) == (idx == 5);
                    if (linkThroughCenter) {
                        join(bottom(), right());
                        join(top(), left());
                    } else {
                        join(bottom(), left());
                        join(top(), right());
                    }
                    break;
                }
            }
        }
    }

    // Every crossing has degree two, so the link graph decomposes into cycles.
    std::vector<std::vector<TorusPoint>> curves;
    std::map<std::int64_t, bool> used;
    for (const auto& [start, _] : cb.links) {
        if (used[start]) continue;
        std::vector<TorusPoint> curve;
        std::int64_t prev = -1, cur = start;
        while (true) {
            used[cur] = true;
            const auto& pt = cb.points[cur];
            curve.push_back({pt.first, pt.second});
            const auto& nb = cb.links[cur];
            std::int64_t next = -1;
            for (std::int64_t cand : nb)
                if (cand != prev) {
                    next = cand;
                    break;
                }
            if (next == -1 || next == start) break;
            prev = cur;
            cur = next;
        }
        if (curve.size() >= 3) curves.push_back(std::move(curve));
    }
    std::sort(curves.begin(), curves.end(),
              [](const auto& u, const auto& v) { return u.size() > v.size(); });
    return curves;
}

/// Images of the critical curves under r_inverse; these bound the annulus.
inline std::vector<std::vector<Complex>> fold_image(const ArmLinkage& l, int n = 512) {
    std::vector<std::vector<Complex>> out;
    for (const auto& curve : critical_set(l, n)) {
        std::vector<Complex> img;
        img.reserve(curve.size());
        for (const TorusPoint& p : curve) img.push_back(r_inverse(l, p));
        out.push_back(std::move(img));
    }
    return out;
}

// --------------------------------------------------------------------------
// t-slicing: fixing the end-to-end distance t turns the arm into the closed
// linkage Q_t = (a, b, c, t) whose image arc is rescaled into the chart at
// infinity (radius b t / (ac), same conjugation-symmetric angle interval).
// --------------------------------------------------------------------------

inline double t_min(const ArmLinkage& l) {
    return std::max(0.0, 2.0 * l.max_link() - l.reach());
}
inline double t_max(const ArmLinkage& l) { return l.reach(); }

enum class SliceKind { Empty, Point, TwoPoints, Arc, FullCircle };

inline const char* to_string(SliceKind k) {
    switch (k) {
        case SliceKind::Empty: return "Empty";
        case SliceKind::Point: return "Point";
        case SliceKind::TwoPoints: return "TwoPoints";
        case SliceKind::Arc: return "Arc";
        case SliceKind::FullCircle: return "FullCircle";
    }
    return "?";
}

struct TSlice {
    double t = 0.0;
    SliceKind kind = SliceKind::Empty;
    CircleArc arc;  // chart at infinity, radius b t / (ac)
};

inline TSlice t_slice(const ArmLinkage& l, double t) {
    const double lo = t_min(l), hi = t_max(l);
    if (!(t >= lo && t <= hi))
        throw InvalidInput("t_slice: t outside the existence interval");

    const double radius = l.b * t / (l.a * l.c);
    if (t == 0.0) {
        // two conjugate triangles; both map to 0 in the chart at infinity
        return {t, SliceKind::TwoPoints, CircleArc{Complex{0, 0}, 0.0, 0.0, kTwoPi, true}};
    }

    const QuadLinkage q(l.a, l.b, l.c, t);
    if (!is_nondegenerate(q)) {
        const DegenerateImageReport rep = degenerate_image_report(q);
        if (rep.kind == DegenerateKind::LongAligned)
            return {t, SliceKind::Point, CircleArc{Complex{0, 0}, radius, kPi, kPi, true}};
        return {t, SliceKind::FullCircle,
                CircleArc{Complex{0, 0}, radius, 0.0, kTwoPi, true}};
    }

    const CircleArc rq = r_image(q);
    // 1/w negates angles; the interval is negation-symmetric, so it carries over.
    return {t, rq.full() ? SliceKind::FullCircle : SliceKind::Arc,
            CircleArc{Complex{0, 0}, radius, rq.argLo, rq.argHi, true}};
}

/// Component count and slice kind of the t-level, from the Q_t sign data.
struct SliceTopology {
    SliceKind kind = SliceKind::Empty;
    int components = 0;
};

inline SliceTopology slice_topology(const ArmLinkage& l, double t) {
    if (t < t_min(l) || t > t_max(l)) return {SliceKind::Empty, 0};
    if (t == 0.0) return {SliceKind::TwoPoints, 2};
    const QuadLinkage q(l.a, l.b, l.c, t);
    if (is_long_aligned(q)) return {SliceKind::Point, 1};
    if (!is_nondegenerate(q)) return {SliceKind::FullCircle, 1};  // bouquet level
    if (grashof_signs(q).product() < 0.0) return {SliceKind::FullCircle, 2};
    return {SliceKind::Arc, 1};
}

/// End-to-end distances where the slice topology changes: the aligned
/// positions, plus 0 when the arm contains a triangle.
inline std::vector<double> morse_t_values(const ArmLinkage& l) {
    require_generic(l, "morse_t_values");
    const auto t = aligned_distances(l);
    std::vector<double> v(t.begin(), t.end());
    if (arm_case(l) == ArmCase::ContainsTriangle) v.push_back(0.0);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// The image annulus: fold-curve boundaries plus a movie of t-slices with
/// frames at the Morse values, the midpoints of Morse intervals and a uniform
/// fill.
struct AnnulusImage {
    std::vector<Complex> outerBoundary;
    std::vector<Complex> innerBoundary;
    std::vector<std::vector<TorusPoint>> foldCurves;
    std::vector<double> morseTValues;
    std::vector<TSlice> slices;
    ArmCase caseTag = ArmCase::NoClosed;
    double radiusBound = 0.0;  // b (a+b+c) / (ac)
};

inline AnnulusImage annulus_image(const ArmLinkage& l, int frames = 24, int grid = 512) {
    require_generic(l, "annulus_image");
    if (frames < 4) throw InvalidInput("annulus_image: need at least 4 frames");

    AnnulusImage img;
    img.caseTag = arm_case(l);
    img.morseTValues = morse_t_values(l);
    img.radiusBound = l.b * l.reach() / (l.a * l.c);
    img.foldCurves = critical_set(l, grid);

    double best = -1.0, worst = std::numeric_limits<double>::infinity();
    for (const auto& curve : img.foldCurves) {
        double mean = 0.0;
        std::vector<Complex> image;
        image.reserve(curve.size());
        for (const TorusPoint& p : curve) {
            image.push_back(r_inverse(l, p));
            mean += std::abs(image.back());
        }
        mean /= (double)curve.size();
        if (mean > best) {
            best = mean;
            img.outerBoundary = image;
        }
        if (mean < worst) {
            worst = mean;
            img.innerBoundary = std::move(image);
        }
    }

    // frame grid: Morse values and their midpoints, then bisect the largest
    // gaps until the requested frame count is reached
    const double hi = img.morseTValues.back();
    std::vector<double> ts = img.morseTValues;
    for (size_t k = 0; k + 1 < img.morseTValues.size(); ++k)
        ts.push_back(0.5 * (img.morseTValues[k] + img.morseTValues[k + 1]));
    std::sort(ts.begin(), ts.end());
    while ((int)ts.size() < frames) {
        size_t widest = 0;
        for (size_t k = 0; k + 1 < ts.size(); ++k)
            if (ts[k + 1] - ts[k] > ts[widest + 1] - ts[widest]) widest = k;
        ts.insert(ts.begin() + widest + 1, 0.5 * (ts[widest] + ts[widest + 1]));
    }
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [&](double u, double v) { return std::abs(u - v) < 1e-12 * hi; }),
             ts.end());

    for (double t : ts) img.slices.push_back(t_slice(l, t));
    return img;
}

// --------------------------------------------------------------------------
// 2-jet of r_inverse at the aligned positions (phi, eta) in {0, pi}^2.
// Writing sigma = (e^{i phi0}, e^{i eta0}) and offsets (x, y), the jet is
//   prefactor * [ t0 - Q(x,y)/2 + i L(x,y) ]
// with t0 the signed aligned sum, L linear and Q quadratic.
// --------------------------------------------------------------------------

struct AlignedJet {
    TorusPoint corner;
    double signedSum = 0.0;              // t0 = a + b sigma1 + c sigma2
    double qxx = 0.0, qxy = 0.0, qyy = 0.0;
    double lx = 0.0, ly = 0.0;
    Complex prefactor;                   // (-b/(ac)) sigma1 sigma2
    bool fold = false;
};

/// Fold verdict at an aligned position: the jet is a fold iff the linear part
/// is nonzero and the quadratic part is nondegenerate on its kernel line.
inline AlignedJet jet2_at_aligned(const ArmLinkage& l, const TorusPoint& p) {
    auto snap = [](double ang) -> int {
        const double m = mod_two_pi(ang);
        if (angle_dist(m, 0.0) < 1e-9) return +1;
        if (angle_dist(m, kPi) < 1e-9) return -1;
        return 0;
    };
    const int s1 = snap(p.phi), s2 = snap(p.eta);
    if (s1 == 0 || s2 == 0)
        throw InvalidInput("jet2_at_aligned: point is not an aligned position");

    AlignedJet jet;
    jet.corner = {s1 > 0 ? 0.0 : kPi, s2 > 0 ? 0.0 : kPi};
    const double t0 = l.a + l.b * s1 + l.c * s2;
    jet.signedSum = t0;
    jet.qxx = t0 + 3.0 * l.b * s1;
    jet.qyy = t0 - l.c * s2;
    jet.qxy = -2.0 * t0 - 2.0 * l.b * s1 + 2.0 * l.c * s2;
    jet.lx = t0 + l.b * s1;
    jet.ly = l.c * s2 - t0;
    jet.prefactor = Complex(-l.b / (l.a * l.c) * s1 * s2, 0.0);

    const double lscale = l.reach();
    const double kx = -jet.ly, ky = jet.lx;  // kernel direction of the linear part
    const double qker = jet.qxx * kx * kx + jet.qxy * kx * ky + jet.qyy * ky * ky;
    jet.fold = std::hypot(jet.lx, jet.ly) > 1e-9 * lscale &&
               std::abs(qker) > 1e-9 * lscale * lscale * lscale;
    return jet;
}

// --------------------------------------------------------------------------
// Preimage counting by Newton refinement from grid seeds.
// --------------------------------------------------------------------------

struct PreimageQuery {
    int count = 0;
    int signedCount = 0;        // preimages weighted by Jacobian sign
    bool indeterminate = false; // w too close to the fold image
    std::vector<TorusPoint> roots;
};

inline PreimageQuery preimage_count(const ArmLinkage& l, Complex w, int n = 256) {
    require_generic(l, "preimage_count");
    if (n < 16) throw InvalidInput("preimage_count: grid too small");

    const double wScale = l.b * l.reach() / (l.a * l.c);
    const double lip = (l.b / (l.a * l.c)) * (l.reach() + std::max(l.b, l.c)) * 2.0;
    const double h = kTwoPi / n;

    std::vector<TorusPoint> seeds;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const TorusPoint p{kTwoPi * i / n, kTwoPi * j / n};
            if (std::abs(r_inverse(l, p) - w) < 1.5 * lip * h) seeds.push_back(p);
        }

    std::vector<TorusPoint> roots;
    for (TorusPoint p : seeds) {
        bool ok = false;
        for (int it = 0; it < 50; ++it) {
            const Complex f = r_inverse(l, p) - w;
            if (std::abs(f) < 1e-12 * std::max(wScale, 1.0)) {
                ok = true;
                break;
            }
            const auto [dphi, deta] = r_inverse_partials(l, p);
            const double det = std::real(dphi) * std::imag(deta) -
                               std::imag(dphi) * std::real(deta);
            if (std::abs(det) < 1e-14) break;
            const double dx = (std::real(f) * std::imag(deta) -
                               std::imag(f) * std::real(deta)) / det;
            const double dy = (std::imag(f) * std::real(dphi) -
                               std::real(f) * std::imag(dphi)) / det;
            if (std::abs(dx) > 1.0 || std::abs(dy) > 1.0) {
                p.phi = mod_two_pi(p.phi - std::clamp(dx, -0.5, 0.5));
                p.eta = mod_two_pi(p.eta - std::clamp(dy, -0.5, 0.5));
            } else {
                p.phi = mod_two_pi(p.phi - dx);
                p.eta = mod_two_pi(p.eta - dy);
            }
        }
        if (!ok) continue;
        bool dup = false;
        for (const TorusPoint& r : roots)
            if (angle_dist(r.phi, p.phi) < 1e-5 && angle_dist(r.eta, p.eta) < 1e-5)
                dup = true;
        if (!dup) roots.push_back(p);
    }

    PreimageQuery q;
    const double jScale = l.a * l.b + l.a * l.c + l.b * l.c;
    for (const TorusPoint& r : roots) {
        const double jac = jacobian(l, r);
        if (std::abs(jac) < 1e-5 * jScale) q.indeterminate = true;
        q.signedCount += jac > 0.0 ? 1 : -1;
    }
    q.count = (int)roots.size();
    q.roots = std::move(roots);
    return q;
}

}  // namespace linkage

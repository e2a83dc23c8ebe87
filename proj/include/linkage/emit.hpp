#pragma once

// Report and figure emitters behind the CLI: JSON records, CSV samples and
// SVG figures with deterministic formatting.

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "linkage/arm.hpp"
#include "linkage/geometry.hpp"
#include "linkage/quad.hpp"
#include "linkage/svg.hpp"

namespace linkage {

inline constexpr const char* kToolName = "linkage";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct OutputSpec {
    std::set<std::string> formats{"json", "csv", "svg"};
    std::string outBase;  // empty: JSON report to stdout only, no files
    int precision = 12;

    bool wants(const std::string& f) const { return formats.count(f) > 0; }
};

inline void validate(const OutputSpec& spec) {
    if (spec.precision < 3 || spec.precision > 17)
        throw InvalidInput("precision must be in [3, 17]");
    for (const std::string& f : spec.formats)
        if (f != "json" && f != "csv" && f != "svg")
            throw InvalidInput("unknown format: " + f);
}

/// Fixed significant-digit rendering; the one source of numeric text.
inline std::string fmt_num(double v, int precision) {
    if (v == 0.0) v = 0.0;  // collapse -0
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

/// Double rounded to the emitted precision, so JSON numbers match the CSVs.
inline double jnum(double v, int precision) {
    return std::strtod(fmt_num(v, precision).c_str(), nullptr);
}

inline Json jcomplex(Complex z, int precision) {
    return Json::array({jnum(std::real(z), precision), jnum(std::imag(z), precision)});
}

struct RunReport {
    Json doc;
    std::vector<std::string> files;
    double durationMs = 0.0;
};

namespace detail {

inline void write_file(RunReport& report, const std::string& path,
                       const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw InvalidInput("cannot write output file: " + path);
    report.files.push_back(path);
}

inline Json envelope(const char* command, const std::vector<double>& lengths,
                     int precision) {
    Json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["command"] = command;
    Json ls = Json::array();
    for (double v : lengths) ls.push_back(jnum(v, precision));
    doc["lengths"] = ls;
    return doc;
}

inline Json grashof_json(const GrashofSigns& g, int p) {
    Json j;
    j["p1"] = jnum(g.p1, p);
    j["p2"] = jnum(g.p2, p);
    j["p3"] = jnum(g.p3, p);
    j["s"] = jnum(g.s, p);
    j["product"] = jnum(g.product(), p);
    j["longAligned"] = jnum(g.longAligned, p);
    return j;
}

inline Json arc_json(const CircleArc& arc, int p) {
    Json j;
    j["center"] = jcomplex(arc.center, p);
    j["radius"] = jnum(arc.radius, p);
    j["argLo"] = jnum(arc.argLo, p);
    j["argHi"] = jnum(arc.argHi, p);
    j["fullCircle"] = arc.full();
    j["conjSymmetric"] = arc.conjSymmetric;
    return j;
}

inline Json degenerate_json(const DegenerateImageReport& r, int p) {
    Json j;
    j["kind"] = to_string(r.kind);
    j["topology"] = to_string(r.topology);
    j["radius"] = jnum(r.radius, p);
    j["surjective"] = r.surjective;
    if (r.imagePoint) j["imagePoint"] = jcomplex(*r.imagePoint, p);
    if (r.collapsePoint) j["collapsePoint"] = jcomplex(*r.collapsePoint, p);
    j["coveringCircles"] = r.coveringCircles;
    j["collapsedCircles"] = r.collapsedCircles;
    j["note"] = r.note;
    return j;
}

inline void finalize(RunReport& report, const OutputSpec& spec) {
    Json files = Json::array();
    for (const std::string& f : report.files) files.push_back(f);
    report.doc["files"] = files;
    if (!spec.outBase.empty() && spec.wants("json")) {
        // manifest names the JSON file itself
        report.doc["files"].push_back(spec.outBase + ".json");
        write_file(report, spec.outBase + ".json", report.doc.dump(2) + "\n");
    }
}

}  // namespace detail

// --------------------------------------------------------------------------
// quad subcommands
// --------------------------------------------------------------------------

inline RunReport cmd_quad_classify(const std::array<double, 4>& L,
                                   const OutputSpec& spec) {
    validate(spec);
    const int p = spec.precision;
    const QuadLinkage l(L[0], L[1], L[2], L[3]);
    if (!l.exists()) throw InvalidInput("no planar realization: longest side exceeds "
                                        "the sum of the others");
    RunReport report;
    report.doc = detail::envelope("quad classify", {L.begin(), L.end()}, p);
    report.doc["exists"] = true;
    const bool nondeg = is_nondegenerate(l);
    report.doc["nondegenerate"] = nondeg;
    report.doc["grashof"] = detail::grashof_json(grashof_signs(l), p);
    report.doc["topology"] = to_string(classify_topology(l));
    report.doc["connected"] = is_connected(l);
    if (nondeg) {
        report.doc["surjective"] = is_surjective(l);
    } else {
        const DegenerateImageReport rep = degenerate_image_report(l);
        report.doc["surjective"] = rep.surjective;
        report.doc["degenerate"] = detail::degenerate_json(rep, p);
    }
    detail::finalize(report, spec);
    return report;
}

namespace detail {

inline std::string moduli_csv(const QuadLinkage& l,
                              const std::vector<std::vector<ModuliPoint>>& comps,
                              int p) {
    std::string out = "# component,alpha,gamma,argR\n";
    for (size_t ci = 0; ci < comps.size(); ++ci)
        for (const ModuliPoint& mp : comps[ci]) {
            const double gamma = gamma_of(l, mp);
            out += std::to_string(ci) + "," + fmt_num(mp.alpha, p) + "," +
                   fmt_num(gamma, p) + "," + fmt_num(mod_two_pi(-(mp.alpha + gamma)), p) +
                   "\n";
        }
    return out;
}

inline std::string image_csv(const QuadLinkage& l,
                             const std::vector<std::vector<ModuliPoint>>& comps,
                             int p) {
    const double radius = (l.a * l.c) / (l.b * l.d);
    std::string out = "# component,tau,re,im\n";
    for (size_t ci = 0; ci < comps.size(); ++ci)
        for (const ModuliPoint& mp : comps[ci]) {
            const double tau = mod_two_pi(-(mp.alpha + gamma_of(l, mp)));
            const Complex w = radius * std::exp(Complex(0.0, tau));
            out += std::to_string(ci) + "," + fmt_num(tau, p) + "," +
                   fmt_num(std::real(w), p) + "," + fmt_num(std::imag(w), p) + "\n";
        }
    return out;
}

}  // namespace detail

inline RunReport cmd_quad_image(const std::array<double, 4>& L, int samples,
                                const OutputSpec& spec) {
    validate(spec);
    const int p = spec.precision;
    const QuadLinkage l(L[0], L[1], L[2], L[3]);
    if (!l.exists()) throw InvalidInput("no planar realization: longest side exceeds "
                                        "the sum of the others");
    if (samples < 16) throw InvalidInput("need --samples >= 16");

    RunReport report;
    report.doc = detail::envelope("quad image", {L.begin(), L.end()}, p);
    const double radius = (l.a * l.c) / (l.b * l.d);
    report.doc["radius"] = jnum(radius, p);

    if (!is_nondegenerate(l)) {
        const DegenerateImageReport rep = degenerate_image_report(l);
        report.doc["degenerate"] = detail::degenerate_json(rep, p);
        if (!spec.outBase.empty() && spec.wants("svg")) {
            const double R = 1.3 * radius + 0.2;
            svg::Document doc(-R, -R, R, R);
            doc.circle(Complex{0, 0}, radius, "#888");
            if (rep.imagePoint) doc.dot(*rep.imagePoint, 4.0, "#d00");
            if (rep.collapsePoint) doc.dot(*rep.collapsePoint, 4.0, "#06c");
            detail::write_file(report, spec.outBase + ".svg", doc.str());
        }
        detail::finalize(report, spec);
        return report;
    }

    const CircleArc arc = r_image(l);
    const CircleArc cr = cr_image(l);
    const auto comps = trace_moduli(l, samples);
    const auto folds = critical_points(l);

    report.doc["fullCircle"] = arc.full();
    report.doc["tauStar"] = jnum(arc.full() ? 0.0 : tau_star(l), p);
    report.doc["rImage"] = detail::arc_json(arc, p);
    report.doc["crImage"] = detail::arc_json(cr, p);
    report.doc["componentCount"] = (int)comps.size();
    report.doc["foldCount"] = (int)folds.size();

    if (!spec.outBase.empty()) {
        if (spec.wants("csv")) {
            detail::write_file(report, spec.outBase + ".moduli.csv",
                               detail::moduli_csv(l, comps, p));
            detail::write_file(report, spec.outBase + ".image.csv",
                               detail::image_csv(l, comps, p));
        }
        if (spec.wants("svg")) {
            const double R = 1.3 * std::max(radius + 1.0, radius) + 0.3;
            svg::Document doc(-R, -R, R + 1.0, R);
            doc.circle(Complex{0, 0}, radius, "#ccc");
            doc.circle(Complex{1, 0}, radius, "#cce", 1.0, "4 3");
            doc.arc(Complex{0, 0}, radius, arc.argLo, arc.argHi, "#06c", 2.0);
            doc.arc(Complex{1, 0}, radius, cr.argLo, cr.argHi, "#c6a", 2.0);
            for (const FoldCertificate& f : folds) {
                const double tau = -(f.point.alpha + gamma_of(l, f.point));
                doc.dot(radius * std::exp(Complex(0.0, tau)), 4.0, "#d00");
            }
            doc.dot(Complex{0, 0}, 2.5, "#444");
            doc.dot(Complex{1, 0}, 2.5, "#444");
            detail::write_file(report, spec.outBase + ".svg", doc.str());
        }
    }
    detail::finalize(report, spec);
    return report;
}

inline RunReport cmd_quad_critical(const std::array<double, 4>& L, int samples,
                                   const OutputSpec& spec) {
    validate(spec);
    const int p = spec.precision;
    const QuadLinkage l(L[0], L[1], L[2], L[3]);
    if (!l.exists()) throw InvalidInput("no planar realization: longest side exceeds "
                                        "the sum of the others");
    if (!is_nondegenerate(l))
        throw GenericityError("quad critical: degenerate linkage (some a±b±c±d = 0)");

    const auto folds = critical_points(l);
    const auto cyclics = cyclic_configurations(l);
    const MappingDegree degree = mapping_degree(l, std::max(samples, 16));

    RunReport report;
    report.doc = detail::envelope("quad critical", {L.begin(), L.end()}, p);
    Json jf = Json::array();
    for (const FoldCertificate& f : folds) {
        Json e;
        const double gamma = gamma_of(l, f.point);
        e["alpha"] = jnum(f.point.alpha, p);
        e["gamma"] = jnum(gamma, p);
        e["component"] = f.point.component;
        e["argR"] = jnum(mod_two_pi(-(f.point.alpha + gamma)), p);
        e["lambdaInv"] = jnum(f.lambdaInv, p);
        e["secondDeriv"] = jnum(f.secondDeriv, p);
        e["signedArea"] = jnum(signed_area(embed_point(l, f.point)), p);
        jf.push_back(e);
    }
    report.doc["foldCertificates"] = jf;

    Json jc = Json::array();
    for (const PlanarConfig& V : cyclics) {
        Json e;
        e["vertices"] = Json::array({jcomplex(V.v1, p), jcomplex(V.v2, p),
                                     jcomplex(V.v3, p), jcomplex(V.v4, p)});
        const ExtendedComplex cr = config_cross_ratio(V);
        e["cr"] = cr.is_finite() ? jcomplex(cr.value(), p) : Json("inf");
        jc.push_back(e);
    }
    report.doc["cyclicConfigurations"] = jc;
    report.doc["mappingDegree"] = {{"perComponent", degree.perComponent},
                                   {"total", degree.total}};

    if (!spec.outBase.empty()) {
        if (spec.wants("csv")) {
            std::string csv = "# component,alpha,gamma,argR,lambdaInv,secondDeriv\n";
            for (const FoldCertificate& f : folds) {
                const double gamma = gamma_of(l, f.point);
                csv += std::to_string(f.point.component) + "," +
                       fmt_num(f.point.alpha, p) + "," + fmt_num(gamma, p) + "," +
                       fmt_num(mod_two_pi(-(f.point.alpha + gamma)), p) + "," +
                       fmt_num(f.lambdaInv, p) + "," + fmt_num(f.secondDeriv, p) + "\n";
            }
            detail::write_file(report, spec.outBase + ".critical.csv", csv);
        }
        if (spec.wants("svg")) {
            svg::Document doc(-0.4, -0.4, kTwoPi + 0.4, kTwoPi + 0.4);
            // moduli curve in the (alpha, gamma) square
            std::vector<Complex> sq{{0, 0}, {kTwoPi, 0}, {kTwoPi, kTwoPi}, {0, kTwoPi}};
            doc.polyline(sq, "#999", 1.0, true);
            for (const auto& comp : trace_moduli(l, std::max(samples, 16))) {
                std::vector<Complex> pts;
                for (const ModuliPoint& mp : comp)
                    pts.push_back(Complex{mp.alpha, gamma_of(l, mp)});
                pts.push_back(pts.front());
                for (const auto& run : svg::split_torus_curve(pts))
                    doc.polyline(run, "#06c", 1.5);
            }
            for (const FoldCertificate& f : folds)
                doc.dot(Complex{f.point.alpha, gamma_of(l, f.point)}, 4.0, "#d00");
            for (const PlanarConfig& V : cyclics) {
                const AnglePair ang = angles(V);
                doc.dot(Complex{ang.alpha, ang.gamma}, 3.0, "#090");
            }
            detail::write_file(report, spec.outBase + ".svg", doc.str());
        }
    }
    detail::finalize(report, spec);
    return report;
}

// --------------------------------------------------------------------------
// arm subcommands
// --------------------------------------------------------------------------

namespace detail {

inline std::vector<Complex> sample_slice(const TSlice& s, int n = 128) {
    std::vector<Complex> pts;
    if (s.kind == SliceKind::Point || s.kind == SliceKind::TwoPoints) {
        pts.push_back(s.arc.point_at(s.arc.argLo));
        return pts;
    }
    for (int k = 0; k <= n; ++k)
        pts.push_back(s.arc.point_at(s.arc.argLo + s.arc.span() * k / n));
    return pts;
}

inline void draw_boundaries(svg::Document& doc, const AnnulusImage& img,
                            const std::string& color, double width) {
    for (const auto* b : {&img.outerBoundary, &img.innerBoundary}) {
        std::vector<Complex> closed = *b;
        if (!closed.empty()) closed.push_back(closed.front());
        doc.polyline(closed, color, width);
    }
}

inline std::string frame_tag(size_t k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03zu", k);
    return buf;
}

}  // namespace detail

inline RunReport cmd_arm_movie(const std::array<double, 3>& L, int frames, int grid,
                               const OutputSpec& spec) {
    validate(spec);
    const int p = spec.precision;
    const ArmLinkage l(L[0], L[1], L[2]);
    const AnnulusImage img = annulus_image(l, frames, grid);

    RunReport report;
    report.doc = detail::envelope("arm movie", {L.begin(), L.end()}, p);
    report.doc["caseTag"] = to_string(img.caseTag);
    Json morse = Json::array();
    for (double t : img.morseTValues) morse.push_back(jnum(t, p));
    report.doc["morseTValues"] = morse;
    report.doc["tMin"] = jnum(t_min(l), p);
    report.doc["tMax"] = jnum(t_max(l), p);
    report.doc["radiusBound"] = jnum(img.radiusBound, p);

    Json jframes = Json::array();
    const double R = 1.1 * img.radiusBound;
    for (size_t k = 0; k < img.slices.size(); ++k) {
        const TSlice& s = img.slices[k];
        Json e;
        e["t"] = jnum(s.t, p);
        e["kind"] = to_string(s.kind);
        e["radius"] = jnum(s.arc.radius, p);
        e["argLo"] = jnum(s.arc.argLo, p);
        e["argHi"] = jnum(s.arc.argHi, p);
        if (!spec.outBase.empty()) {
            const std::string tag = detail::frame_tag(k);
            if (spec.wants("csv")) {
                std::string csv = "# re,im  (t = " + fmt_num(s.t, p) + ")\n";
                for (Complex w : detail::sample_slice(s))
                    csv += fmt_num(std::real(w), p) + "," + fmt_num(std::imag(w), p) + "\n";
                detail::write_file(report, spec.outBase + ".frame" + tag + ".csv", csv);
                e["csv"] = spec.outBase + ".frame" + tag + ".csv";
            }
            if (spec.wants("svg")) {
                svg::Document doc(-R, -R, R, R);
                detail::draw_boundaries(doc, img, "#ddd", 1.0);
                const auto pts = detail::sample_slice(s);
                if (pts.size() == 1)
                    doc.dot(pts.front(), 4.0, "#06c");
                else
                    doc.polyline(pts, "#06c", 2.0);
                doc.dot(Complex{0, 0}, 2.0, "#444");
                doc.text(Complex{-R * 0.95, R * 0.9}, "t = " + fmt_num(s.t, 6));
                detail::write_file(report, spec.outBase + ".frame" + tag + ".svg",
                                   doc.str());
                e["svg"] = spec.outBase + ".frame" + tag + ".svg";
            }
        }
        jframes.push_back(e);
    }
    report.doc["frames"] = jframes;
    detail::finalize(report, spec);
    return report;
}

inline RunReport cmd_arm_critical(const std::array<double, 3>& L, int grid,
                                  const OutputSpec& spec) {
    validate(spec);
    const int p = spec.precision;
    const ArmLinkage l(L[0], L[1], L[2]);
    require_generic(l, "arm critical");

    const auto curves = critical_set(l, grid);
    std::vector<std::vector<Complex>> images;
    for (const auto& c : curves) {
        std::vector<Complex> img;
        for (const TorusPoint& q : c) img.push_back(r_inverse(l, q));
        images.push_back(std::move(img));
    }

    RunReport report;
    report.doc = detail::envelope("arm critical", {L.begin(), L.end()}, p);
    report.doc["caseTag"] = to_string(arm_case(l));
    report.doc["foldCurves"] = (int)curves.size();
    const double bound = l.b * l.reach() / (l.a * l.c);
    report.doc["radiusBound"] = jnum(bound, p);

    // preimage audit: interior regular values on the negative real side plus
    // two exterior probes
    Json audit = Json::array();
    const auto morse = morse_t_values(l);
    const double lo = t_min(l), hi = t_max(l);
    for (int k = 0; k < 6; ++k) {
        const double t = lo + (hi - lo) * (k + 0.5) / 6.0;
        bool nearMorse = false;
        for (double m : morse)
            if (std::abs(t - m) < 0.02 * (hi - lo)) nearMorse = true;
        if (nearMorse) continue;
        const TSlice s = t_slice(l, t);
        if (s.kind != SliceKind::Arc && s.kind != SliceKind::FullCircle) continue;
        const Complex w = s.arc.point_at(kPi);
        const PreimageQuery q = preimage_count(l, w, std::min(grid, 256));
        Json e;
        e["w"] = jcomplex(w, p);
        e["count"] = q.count;
        e["signedCount"] = q.signedCount;
        e["indeterminate"] = q.indeterminate;
        audit.push_back(e);
    }
    for (double fac : {1.15, 1.5}) {
        const Complex w{0.3 * bound, fac * bound};
        const PreimageQuery q = preimage_count(l, w, std::min(grid, 256));
        Json e;
        e["w"] = jcomplex(w, p);
        e["count"] = q.count;
        e["signedCount"] = q.signedCount;
        e["indeterminate"] = q.indeterminate;
        audit.push_back(e);
    }
    report.doc["preimageAudit"] = audit;

    if (!spec.outBase.empty()) {
        if (spec.wants("csv")) {
            std::string csv = "# curve,index,phi,eta\n";
            for (size_t ci = 0; ci < curves.size(); ++ci)
                for (size_t k = 0; k < curves[ci].size(); ++k)
                    csv += std::to_string(ci) + "," + std::to_string(k) + "," +
                           fmt_num(curves[ci][k].phi, p) + "," +
                           fmt_num(curves[ci][k].eta, p) + "\n";
            detail::write_file(report, spec.outBase + ".fold.csv", csv);

            std::string icsv = "# curve,index,re,im\n";
            for (size_t ci = 0; ci < images.size(); ++ci)
                for (size_t k = 0; k < images[ci].size(); ++k)
                    icsv += std::to_string(ci) + "," + std::to_string(k) + "," +
                            fmt_num(std::real(images[ci][k]), p) + "," +
                            fmt_num(std::imag(images[ci][k]), p) + "\n";
            detail::write_file(report, spec.outBase + ".foldimage.csv", icsv);
        }
        if (spec.wants("svg")) {
            const double R = 1.2 * bound;
            svg::Document doc(-R, -R, R, R);
            for (const auto& img : images) {
                std::vector<Complex> closed = img;
                closed.push_back(closed.front());
                doc.polyline(closed, "#06c", 1.5);
            }
            for (const auto& e : audit)
                doc.dot(Complex{e["w"][0].get<double>(), e["w"][1].get<double>()}, 3.0,
                        e["count"].get<int>() == 2 ? "#090" : "#d00");
            doc.dot(Complex{0, 0}, 2.0, "#444");
            detail::write_file(report, spec.outBase + ".svg", doc.str());
        }
    }
    detail::finalize(report, spec);
    return report;
}

inline RunReport cmd_arm_image(const std::array<double, 3>& L, int frames, int grid,
                               const OutputSpec& spec) {
    validate(spec);
    const int p = spec.precision;
    const ArmLinkage l(L[0], L[1], L[2]);
    const AnnulusImage img = annulus_image(l, frames, grid);

    RunReport report;
    report.doc = detail::envelope("arm image", {L.begin(), L.end()}, p);
    report.doc["caseTag"] = to_string(img.caseTag);
    Json morse = Json::array();
    for (double t : img.morseTValues) morse.push_back(jnum(t, p));
    report.doc["morseTValues"] = morse;
    report.doc["radiusBound"] = jnum(img.radiusBound, p);
    report.doc["foldCurves"] = (int)img.foldCurves.size();

    double outerMax = 0.0, innerMin = std::numeric_limits<double>::infinity();
    for (Complex w : img.outerBoundary) outerMax = std::max(outerMax, std::abs(w));
    for (Complex w : img.innerBoundary) innerMin = std::min(innerMin, std::abs(w));
    report.doc["outerRadiusMax"] = jnum(outerMax, p);
    report.doc["innerRadiusMin"] = jnum(innerMin, p);

    if (!spec.outBase.empty()) {
        if (spec.wants("csv")) {
            for (auto [name, curve] :
                 {std::pair{"outer", &img.outerBoundary}, {"inner", &img.innerBoundary}}) {
                std::string csv = "# index,re,im\n";
                for (size_t k = 0; k < curve->size(); ++k)
                    csv += std::to_string(k) + "," + fmt_num(std::real((*curve)[k]), p) +
                           "," + fmt_num(std::imag((*curve)[k]), p) + "\n";
                detail::write_file(report, spec.outBase + "." + name + ".csv", csv);
            }
        }
        if (spec.wants("svg")) {
            const double R = 1.1 * img.radiusBound;
            svg::Document doc(-R, -R, R, R);
            for (const TSlice& s : img.slices) {
                const auto pts = detail::sample_slice(s);
                if (pts.size() == 1)
                    doc.dot(pts.front(), 2.5, "#9bc");
                else
                    doc.polyline(pts, "#9bc", 0.8);
            }
            detail::draw_boundaries(doc, img, "#06c", 2.0);
            doc.dot(Complex{0, 0}, 2.0, "#444");
            detail::write_file(report, spec.outBase + ".svg", doc.str());
        }
    }
    detail::finalize(report, spec);
    return report;
}

}  // namespace linkage

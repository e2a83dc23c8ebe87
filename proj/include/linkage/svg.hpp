#pragma once

// Minimal SVG 1.1 writer: world coordinates with the real axis horizontal and
// y up (flipped into screen space), fixed-precision output.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "linkage/geometry.hpp"

namespace linkage::svg {

class Document {
public:
    Document(double minX, double minY, double maxX, double maxY, int pixelWidth = 640)
        : minX_(minX), minY_(minY), maxX_(maxX), maxY_(maxY), pw_(pixelWidth) {
        const double aspect = (maxY_ - minY_) / (maxX_ - minX_);
        ph_ = (int)(pw_ * aspect + 0.5);
    }

    void polyline(const std::vector<Complex>& pts, const std::string& stroke,
                  double width = 1.0, bool close = false) {
        if (pts.size() < 2) return;
        body_ << "  <path d=\"";
        for (size_t k = 0; k < pts.size(); ++k) {
            body_ << (k == 0 ? "M" : "L") << fmt(px(pts[k])) << ' ' << fmt(py(pts[k]));
        }
        if (close) body_ << "Z";
        body_ << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
              << fmt(width) << "\"/>\n";
    }

    void circle(Complex center, double r, const std::string& stroke, double width = 1.0,
                const std::string& dash = "") {
        body_ << "  <circle cx=\"" << fmt(px(center)) << "\" cy=\"" << fmt(py(center))
              << "\" r=\"" << fmt(r * sx()) << "\" fill=\"none\" stroke=\"" << stroke
              << "\" stroke-width=\"" << fmt(width) << "\"";
        if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
        body_ << "/>\n";
    }

    void arc(Complex center, double r, double argLo, double argHi,
             const std::string& stroke, double width = 1.0, int segments = 128) {
        std::vector<Complex> pts;
        pts.reserve(segments + 1);
        for (int k = 0; k <= segments; ++k) {
            const double th = argLo + (argHi - argLo) * k / segments;
            pts.push_back(center + r * std::exp(Complex(0.0, th)));
        }
        polyline(pts, stroke, width);
    }

    void dot(Complex center, double rPixels, const std::string& fill) {
        body_ << "  <circle cx=\"" << fmt(px(center)) << "\" cy=\"" << fmt(py(center))
              << "\" r=\"" << fmt(rPixels) << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(Complex pos, const std::string& s, int size = 12,
              const std::string& fill = "#333") {
        body_ << "  <text x=\"" << fmt(px(pos)) << "\" y=\"" << fmt(py(pos))
              << "\" font-size=\"" << size << "\" fill=\"" << fill << "\">" << s
              << "</text>\n";
    }

    std::string str() const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << pw_
            << "\" height=\"" << ph_ << "\" viewBox=\"0 0 " << pw_ << ' ' << ph_
            << "\">\n"
            << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    double sx() const { return pw_ / (maxX_ - minX_); }
    double px(Complex z) const { return (std::real(z) - minX_) * sx(); }
    double py(Complex z) const { return (maxY_ - std::imag(z)) * sx(); }

    static std::string fmt(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.4f", v);
        return buf;
    }

    double minX_, minY_, maxX_, maxY_;
    int pw_, ph_;
    std::ostringstream body_;
};

/// Split a torus-coordinate polyline at wraparound jumps so it can be drawn
/// in the fundamental square.
inline std::vector<std::vector<Complex>> split_torus_curve(
    const std::vector<Complex>& pts) {
    std::vector<std::vector<Complex>> runs;
    std::vector<Complex> cur;
    for (size_t k = 0; k < pts.size(); ++k) {
        if (!cur.empty()) {
            const Complex d = pts[k] - cur.back();
            if (std::abs(std::real(d)) > kPi || std::abs(std::imag(d)) > kPi) {
                runs.push_back(cur);
                cur.clear();
            }
        }
        cur.push_back(pts[k]);
    }
    if (!cur.empty()) runs.push_back(cur);
    return runs;
}

}  // namespace linkage::svg

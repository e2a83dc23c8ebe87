// linkage: moduli spaces and cross-ratio images of planar 4-bar linkages and
// robot 3-arms.
//
// Exit codes: 0 success, 2 invalid input, 3 genericity rejection.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linkage/linkage.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitGenericity = 3;

std::vector<double> parse_lengths(const std::string& text, size_t expected) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw linkage::InvalidInput("cannot parse length value '" + tok + "'");
        }
        if (used != tok.size())
            throw linkage::InvalidInput("cannot parse length value '" + tok + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != expected)
        throw linkage::InvalidInput("expected " + std::to_string(expected) +
                                    " comma-separated lengths, got " +
                                    std::to_string(out.size()));
    return out;
}

struct CommonOpts {
    std::string lengths;
    std::string out;
    std::vector<std::string> formats;
    int precision = 12;
    int samples = 1024;
    int frames = 24;
    int grid = 512;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--lengths", o.lengths, "comma-separated side lengths")->required();
    cmd->add_option("--out", o.out, "output path base (files <base>.json, <base>.*.csv, "
                                    "<base>.svg); stdout JSON only when omitted");
    cmd->add_option("--format", o.formats, "restrict emitted formats (json, csv, svg)");
    cmd->add_option("--precision", o.precision, "significant digits in [3, 17]");
}

linkage::OutputSpec make_spec(const CommonOpts& o) {
    linkage::OutputSpec spec;
    if (!o.formats.empty()) spec.formats = {o.formats.begin(), o.formats.end()};
    spec.outBase = o.out;
    spec.precision = o.precision;
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moduli spaces and cross-ratio images of planar 4-bar linkages and "
                 "robot 3-arms"};
    app.require_subcommand(1);

    CLI::App* quad = app.add_subcommand("quad", "closed 4-bar linkage analyses");
    CLI::App* arm = app.add_subcommand("arm", "open 3-arm analyses");
    quad->require_subcommand(1);
    arm->require_subcommand(1);

    CommonOpts qc, qi, qr, am, ac, ai;

    CLI::App* quadClassify =
        quad->add_subcommand("classify", "topology, connectedness, surjectivity");
    add_common(quadClassify, qc);

    CLI::App* quadImage =
        quad->add_subcommand("image", "uniformizer / cross-ratio image arcs");
    add_common(quadImage, qi);
    quadImage->add_option("--samples", qi.samples, "moduli curve samples");

    CLI::App* quadCritical =
        quad->add_subcommand("critical", "fold certificates, cyclic configurations, "
                                         "mapping degree");
    add_common(quadCritical, qr);
    quadCritical->add_option("--samples", qr.samples, "moduli curve samples");

    CLI::App* armMovie = arm->add_subcommand("movie", "t-slice movie of the image");
    add_common(armMovie, am);
    armMovie->add_option("--frames", am.frames, "number of movie frames");
    armMovie->add_option("--grid", am.grid, "torus grid resolution");

    CLI::App* armCritical =
        arm->add_subcommand("critical", "fold curves, images, preimage audit");
    add_common(armCritical, ac);
    armCritical->add_option("--grid", ac.grid, "torus grid resolution");

    CLI::App* armImage = arm->add_subcommand("image", "annulus image with boundaries");
    add_common(armImage, ai);
    armImage->add_option("--frames", ai.frames, "number of slice frames");
    armImage->add_option("--grid", ai.grid, "torus grid resolution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInvalid;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        linkage::RunReport report;
        std::string label;
        auto quad4 = [&](const CommonOpts& o) {
            const auto v = parse_lengths(o.lengths, 4);
            return std::array<double, 4>{v[0], v[1], v[2], v[3]};
        };
        auto arm3 = [&](const CommonOpts& o) {
            const auto v = parse_lengths(o.lengths, 3);
            return std::array<double, 3>{v[0], v[1], v[2]};
        };

        if (quadClassify->parsed()) {
            report = linkage::cmd_quad_classify(quad4(qc), make_spec(qc));
            label = "quad classify";
        } else if (quadImage->parsed()) {
            report = linkage::cmd_quad_image(quad4(qi), qi.samples, make_spec(qi));
            label = "quad image";
        } else if (quadCritical->parsed()) {
            report = linkage::cmd_quad_critical(quad4(qr), qr.samples, make_spec(qr));
            label = "quad critical";
        } else if (armMovie->parsed()) {
            report = linkage::cmd_arm_movie(arm3(am), am.frames, am.grid, make_spec(am));
            label = "arm movie";
        } else if (armCritical->parsed()) {
            report = linkage::cmd_arm_critical(arm3(ac), ac.grid, make_spec(ac));
            label = "arm critical";
        } else if (armImage->parsed()) {
            report = linkage::cmd_arm_image(arm3(ai), ai.frames, ai.grid, make_spec(ai));
            label = "arm image";
        }

        const auto t1 = std::chrono::steady_clock::now();
        report.durationMs =
            std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() / 1e3;

        // the JSON document itself stays deterministic; timing goes to stderr
        if (report.doc["files"].empty() || report.files.empty())
            std::cout << report.doc.dump(2) << "\n";
        std::fprintf(stderr, "linkage %s: ok, %zu file(s), %.1f ms\n", label.c_str(),
                     report.files.size(), report.durationMs);
        return 0;
    } catch (const linkage::GenericityError& e) {
        std::fprintf(stderr, "linkage: %s\n", e.what());
        return kExitGenericity;
    } catch (const linkage::InvalidInput& e) {
        std::fprintf(stderr, "linkage: %s\n", e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "linkage: %s\n", e.what());
        return kExitInvalid;
    }
}

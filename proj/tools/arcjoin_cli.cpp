// arcjoin command-line front end: render scenes to PPM images, compare
// the proposed join against the fan baseline, and measure arc fidelity.
// All logic lives in the core library; this file only parses flags and
// maps errors to exit codes (0 ok, 1 input error, 2 validation error).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arcjoin/metrics.hpp"
#include "arcjoin/network.hpp"
#include "arcjoin/ppm.hpp"
#include "arcjoin/raster.hpp"
#include "arcjoin/scene.hpp"
#include "arcjoin/tessellate.hpp"

namespace {

using namespace arcjoin;

struct Options {
    std::string input;
    std::string format = "path-text"; // path-text | geojson | generated
    std::string viewport = "800x600";
    double width = 8.0;
    std::string color = "1E5AA8FF";
    std::string aa = "auto";
    std::string join = "proposed"; // proposed | fan:STEP_DEG
    std::string accounting = "per-feature";
    std::string out;
    std::string stats;
    std::uint64_t seed = 1;
    int roads = 6;
    double density = 0.6;
    int networks = 10;
    int threads = 1;
    std::vector<double> angles;
};

Viewport parse_viewport(const std::string& text) {
    int w = 0, h = 0;
    char sep = 0;
    std::istringstream in(text);
    if (!(in >> w >> sep >> h) || (sep != 'x' && sep != 'X') || !in.eof()) {
        throw ValidationError("viewport must be WxH, got '" + text + "'");
    }
    if (w < 1 || h < 1) {
        throw ValidationError("viewport dimensions must be >= 1");
    }
    return {w, h};
}

Rgba parse_color(const std::string& hex) {
    if (hex.size() != 8) {
        throw ValidationError("color must be 8 hex digits RRGGBBAA");
    }
    unsigned channels[4];
    for (int i = 0; i < 4; ++i) {
        unsigned value = 0;
        for (int j = 0; j < 2; ++j) {
            const char c = hex[static_cast<std::size_t>(i * 2 + j)];
            value <<= 4;
            if (c >= '0' && c <= '9') {
                value |= static_cast<unsigned>(c - '0');
            } else if (c >= 'a' && c <= 'f') {
                value |= static_cast<unsigned>(c - 'a' + 10);
            } else if (c >= 'A' && c <= 'F') {
                value |= static_cast<unsigned>(c - 'A' + 10);
            } else {
                throw ValidationError("color must be 8 hex digits RRGGBBAA");
            }
        }
        channels[i] = value;
    }
    return {channels[0] / 255.0f, channels[1] / 255.0f, channels[2] / 255.0f,
            channels[3] / 255.0f};
}

StrokeStyle build_style(const Options& opt) {
    StrokeStyle style;
    style.width = opt.width;
    style.color = parse_color(opt.color);

    if (opt.aa == "auto") {
        style.aa_threshold = default_aa_threshold(opt.width);
    } else {
        try {
            style.aa_threshold = std::stod(opt.aa);
        } catch (const std::exception&) {
            throw ValidationError("--aa must be a number or 'auto'");
        }
    }

    if (opt.join == "proposed") {
        style.join_method = JoinMethod::proposed();
    } else if (opt.join.rfind("fan:", 0) == 0) {
        double step_deg = 0.0;
        try {
            step_deg = std::stod(opt.join.substr(4));
        } catch (const std::exception&) {
            throw ValidationError("--join fan:STEP needs a numeric step in degrees");
        }
        style.join_method = JoinMethod::fan(step_deg * M_PI / 180.0);
    } else {
        throw ValidationError("--join must be 'proposed' or 'fan:STEP'");
    }
    validate_style(style);
    return style;
}

AccountingMode parse_accounting(const std::string& text) {
    if (text == "per-feature") {
        return AccountingMode::kPerFeature;
    }
    if (text == "batched") {
        return AccountingMode::kBatched;
    }
    throw ValidationError("--accounting must be 'per-feature' or 'batched'");
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open input file: " + path);
    }
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

Scene load_scene(const Options& opt) {
    if (opt.format == "generated") {
        return gen_network(opt.seed, opt.roads, opt.density);
    }
    if (opt.input.empty()) {
        throw ValidationError("--input is required unless --format generated");
    }
    const std::string text = read_file(opt.input);
    if (opt.format == "path-text") {
        return parse_path_text(text);
    }
    if (opt.format == "geojson") {
        return parse_geojson_lines(text);
    }
    throw ValidationError("--format must be path-text, geojson or generated");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open for writing: " + path);
    }
    file << text;
    if (!file) {
        throw IoError("write failed: " + path);
    }
}

int cmd_render(const Options& opt) {
    const StrokeStyle style = build_style(opt);
    const Viewport viewport = parse_viewport(opt.viewport);
    if (opt.out.empty()) {
        throw ValidationError("render needs --out FILE");
    }
    if (opt.threads < 1) {
        throw ValidationError("--threads must be >= 1");
    }

    const Scene scene = load_scene(opt);
    const FitTransform fit = fit_viewport(scene, viewport, kSceneMargin);
    const std::vector<Polyline> lines = apply_transform(scene.polylines, fit);

    RenderOptions options;
    options.threads = opt.threads;
    options.accounting = parse_accounting(opt.accounting);
    options.background = {1, 1, 1, 1};
    const SceneRender render = render_scene(lines, style, viewport, options);

    write_ppm(render.framebuffer, opt.out);

    if (!opt.stats.empty()) {
        nlohmann::json doc{{"draw_calls", render.stats.draw_calls},
                           {"triangles", render.stats.triangles},
                           {"fragments_shaded", render.stats.fragments_shaded},
                           {"overlap_pixels", render.stats.overlap_pixels},
                           {"accounting", opt.accounting},
                           {"join", opt.join},
                           {"width", style.width},
                           {"aa_threshold", style.aa_threshold},
                           {"viewport", opt.viewport}};
        write_text_file(opt.stats, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_compare(const Options& opt) {
    StrokeStyle style = build_style(opt);
    const Viewport viewport = parse_viewport(opt.viewport);
    if (style.join_method.kind != JoinMethodKind::kFan) {
        style.join_method = JoinMethod::fan(10.0 * M_PI / 180.0);
    }

    std::vector<Scene> networks;
    if (opt.format == "generated") {
        if (opt.networks < 1) {
            throw ValidationError("--networks must be >= 1");
        }
        for (int i = 0; i < opt.networks; ++i) {
            networks.push_back(gen_network(opt.seed + static_cast<std::uint64_t>(i), opt.roads,
                                           opt.density));
        }
    } else {
        networks.push_back(load_scene(opt));
    }

    const ComparisonReport report = compare_methods(networks, style, viewport);
    std::cout << report.to_tsv();
    if (!opt.stats.empty()) {
        write_text_file(opt.stats, report.to_json() + "\n");
    }

    if (!opt.out.empty()) {
        // Per-pixel |proposed - fan| of the first network's coverage, as
        // a grayscale image for eyeballing where the methods disagree.
        const FitTransform fit = fit_viewport(networks.front(), viewport, kSceneMargin);
        const std::vector<Polyline> lines = apply_transform(networks.front().polylines, fit);
        StrokeStyle white = style;
        white.color = {1, 1, 1, 1};
        white.join_method = JoinMethod::proposed();
        const SceneRender proposed = render_scene(lines, white, viewport);
        white.join_method = JoinMethod::fan(style.join_method.fan_step);
        const SceneRender fan = render_scene(lines, white, viewport);

        Framebuffer diff(viewport.width, viewport.height, {0, 0, 0, 1});
        for (std::size_t i = 0; i < diff.pixels.size(); ++i) {
            const float d = std::abs(proposed.framebuffer.pixels[i].a -
                                     fan.framebuffer.pixels[i].a);
            diff.pixels[i] = {d, d, d, 1};
        }
        write_ppm(diff, opt.out);
    }
    return 0;
}

int cmd_fidelity(const Options& opt) {
    StrokeStyle style = build_style(opt);
    const Viewport viewport = parse_viewport(opt.viewport);
    if (opt.angles.empty()) {
        throw ValidationError("fidelity needs --angles DEG[,DEG...]");
    }
    const double fan_step = style.join_method.kind == JoinMethodKind::kFan
                                ? style.join_method.fan_step
                                : 30.0 * M_PI / 180.0;

    std::printf("angle_deg\tproposed_px\tfan_px\n");
    for (double deg : opt.angles) {
        if (!(deg > 0.0 && deg < 180.0)) {
            throw ValidationError("fidelity angles must be in (0, 180) degrees");
        }
        const double rad = deg * M_PI / 180.0;
        StrokeStyle proposed = style;
        proposed.join_method = JoinMethod::proposed();
        StrokeStyle fan = style;
        fan.join_method = JoinMethod::fan(fan_step);
        std::printf("%g\t%.4f\t%.4f\n", deg, arc_fidelity(proposed, rad, viewport),
                    arc_fidelity(fan, rad, viewport));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Anti-aliased polyline stroking: two-triangle joins, software raster reference, "
                 "and draw-call benchmarking"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", opt.input, "Input scene file");
        cmd->add_option("--format", opt.format, "path-text | geojson | generated");
        cmd->add_option("--viewport", opt.viewport, "Viewport as WxH pixels");
        cmd->add_option("--width", opt.width, "Stroke width in pixels");
        cmd->add_option("--color", opt.color, "Stroke color as RRGGBBAA hex");
        cmd->add_option("--aa", opt.aa, "Anti-alias threshold N in [0,1) or 'auto'");
        cmd->add_option("--join", opt.join, "proposed | fan:STEP_DEG");
        cmd->add_option("--accounting", opt.accounting, "per-feature | batched");
        cmd->add_option("--out", opt.out, "Output image (binary PPM)");
        cmd->add_option("--stats", opt.stats, "Write stats JSON to this file");
        cmd->add_option("--seed", opt.seed, "Seed for generated scenes");
        cmd->add_option("--roads", opt.roads, "Road count for generated scenes");
        cmd->add_option("--density", opt.density, "Join density (0,1] for generated scenes");
        cmd->add_option("--threads", opt.threads, "Raster worker threads");
    };

    CLI::App* render = app.add_subcommand("render", "Render a scene to a PPM image");
    add_common(render);

    CLI::App* compare = app.add_subcommand("compare", "Compare proposed vs fan joins");
    add_common(compare);
    compare->add_option("--networks", opt.networks,
                        "How many generated networks (seeds seed..seed+n-1)");

    CLI::App* fidelity = app.add_subcommand("fidelity", "Arc fidelity per turn angle");
    add_common(fidelity);
    fidelity->add_option("--angles", opt.angles, "Turn angles in degrees")->delimiter(',');

    try {
        app.parse(argc, argv);
        if (render->parsed()) {
            return cmd_render(opt);
        }
        if (compare->parsed()) {
            return cmd_compare(opt);
        }
        return cmd_fidelity(opt);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

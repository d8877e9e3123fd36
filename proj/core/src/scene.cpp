#include "arcjoin/scene.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "arcjoin/errors.hpp"

namespace arcjoin {

namespace {

void grow_bounds(Scene& scene, Vec2 p) {
    scene.min_bound.x = std::min(scene.min_bound.x, p.x);
    scene.min_bound.y = std::min(scene.min_bound.y, p.y);
    scene.max_bound.x = std::max(scene.max_bound.x, p.x);
    scene.max_bound.y = std::max(scene.max_bound.y, p.y);
}

std::string format_double(double v) {
    char buf[32];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

Scene make_scene(std::vector<Polyline> polylines) {
    Scene scene;
    scene.min_bound = {std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity()};
    scene.max_bound = {-std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity()};
    for (const Polyline& line : polylines) {
        validate_polyline(line);
        for (Vec2 p : line.vertices) {
            grow_bounds(scene, p);
        }
    }
    scene.polylines = std::move(polylines);
    return scene;
}

Scene parse_path_text(const std::string& text) {
    std::vector<Polyline> polylines;
    Polyline current;

    auto flush = [&] {
        if (current.vertices.empty()) {
            return;
        }
        if (current.vertices.size() < 2) {
            throw ValidationError("path polyline needs at least 2 points");
        }
        polylines.push_back(std::move(current));
        current = {};
    };

    std::size_t line_no = 0;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            flush();
            continue;
        }
        const std::size_t last = line.find_last_not_of(" \t");
        const std::string body = line.substr(first, last - first + 1);

        double coords[2];
        const char* ptr = body.data();
        const char* end = body.data() + body.size();
        for (int i = 0; i < 2; ++i) {
            while (ptr < end && (*ptr == ' ' || *ptr == '\t')) {
                ++ptr;
            }
            const std::from_chars_result res = std::from_chars(ptr, end, coords[i]);
            if (res.ec != std::errc{}) {
                throw ParseError("expected number on line " + std::to_string(line_no), line_no);
            }
            ptr = res.ptr;
        }
        while (ptr < end && (*ptr == ' ' || *ptr == '\t')) {
            ++ptr;
        }
        if (ptr != end) {
            throw ParseError("trailing junk on line " + std::to_string(line_no), line_no);
        }
        if (!std::isfinite(coords[0]) || !std::isfinite(coords[1])) {
            throw ValidationError("non-finite coordinate on line " + std::to_string(line_no));
        }
        current.vertices.push_back({coords[0], coords[1]});
    }
    flush();
    return make_scene(std::move(polylines));
}

std::string write_path_text(const Scene& scene) {
    std::string out;
    bool first = true;
    for (const Polyline& line : scene.polylines) {
        if (!first) {
            out += '\n';
        }
        first = false;
        for (Vec2 p : line.vertices) {
            out += format_double(p.x);
            out += ' ';
            out += format_double(p.y);
            out += '\n';
        }
    }
    return out;
}

FitTransform fit_viewport(const Scene& scene, Viewport viewport, double margin) {
    if (scene.polylines.empty()) {
        throw ValidationError("fit_viewport: empty scene");
    }
    if (viewport.width < 1 || viewport.height < 1) {
        throw ValidationError("fit_viewport: viewport dimensions must be >= 1");
    }
    if (!(margin >= 0.0) || 2.0 * margin >= std::min(viewport.width, viewport.height)) {
        throw ValidationError("fit_viewport: margin too large for viewport");
    }
    const double ext_x = scene.max_bound.x - scene.min_bound.x;
    const double ext_y = scene.max_bound.y - scene.min_bound.y;
    if (ext_x <= 0.0 && ext_y <= 0.0) {
        throw ValidationError("fit_viewport: degenerate scene bounds");
    }

    const double usable_w = viewport.width - 2.0 * margin;
    const double usable_h = viewport.height - 2.0 * margin;
    double scale = std::numeric_limits<double>::infinity();
    if (ext_x > 0.0) {
        scale = std::min(scale, usable_w / ext_x);
    }
    if (ext_y > 0.0) {
        scale = std::min(scale, usable_h / ext_y);
    }

    // Center the scaled bounds; a zero-extent axis lands on the viewport
    // center through the same expressions.
    const double ox = (viewport.width - scale * ext_x) * 0.5;
    const double oy = (viewport.height + scale * ext_y) * 0.5;

    FitTransform t;
    t.scale = scale;
    t.tx = ox - scale * scene.min_bound.x;
    t.ty = oy + scale * scene.min_bound.y;
    return t;
}

std::vector<Polyline> apply_transform(const std::vector<Polyline>& lines, const FitTransform& t) {
    std::vector<Polyline> out;
    out.reserve(lines.size());
    for (const Polyline& line : lines) {
        Polyline mapped;
        mapped.vertices.reserve(line.vertices.size());
        for (Vec2 p : line.vertices) {
            mapped.vertices.push_back(t.apply(p));
        }
        out.push_back(std::move(mapped));
    }
    return out;
}

} // namespace arcjoin

#pragma once

#include <string>
#include <vector>

#include "arcjoin/polyline.hpp"
#include "arcjoin/raster.hpp"

namespace arcjoin {

// A set of polylines in world units (y up) plus their bounding box.
struct Scene {
    std::vector<Polyline> polylines;
    Vec2 min_bound;
    Vec2 max_bound;
};

// Recomputes bounds and validates every polyline.
Scene make_scene(std::vector<Polyline> polylines);

// Plain path format: one "x y" pair per line, blank lines separate
// polylines, '#' starts a comment. Parse errors carry the 1-based line.
Scene parse_path_text(const std::string& text);

// Inverse of parse_path_text with shortest round-trip decimals.
std::string write_path_text(const Scene& scene);

// Minimal GeoJSON reader: every LineString / MultiLineString under a
// Feature, FeatureCollection or bare geometry becomes a polyline; other
// geometry types and foreign members are ignored, positions are
// truncated to x/y. Errors carry the byte offset for malformed JSON.
Scene parse_geojson_lines(const std::string& text);

// Uniform-scale world->screen map with the y axis flipped.
struct FitTransform {
    double scale = 1.0;
    double tx = 0.0;
    double ty = 0.0;

    Vec2 apply(Vec2 world) const { return {tx + scale * world.x, ty - scale * world.y}; }
};

// Centers the scene bounds inside the viewport minus margin, preserving
// aspect ratio. An axis with zero extent maps to the viewport center.
FitTransform fit_viewport(const Scene& scene, Viewport viewport, double margin);

std::vector<Polyline> apply_transform(const std::vector<Polyline>& lines, const FitTransform& t);

} // namespace arcjoin

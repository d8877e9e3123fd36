#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arcjoin/raster.hpp"
#include "arcjoin/scene.hpp"
#include "arcjoin/tessellate.hpp"

namespace arcjoin {

// Draw submissions for a batch list. PerFeature mirrors the baseline
// renderer's behavior: fan-join triangles are spliced at varying scale
// levels and each goes up as its own submission, while bodies and
// proposed joins are one submission per batch. Batched counts one call
// per contiguous run of batches with the same label (style is uniform
// within a list).
std::int64_t count_draw_calls(const std::vector<TriangleBatch>& batches, AccountingMode mode);

enum class StrokeTessellation {
    kStandard,
    // Reproduces the repeated-corner-drawing artifact: body quads are
    // extended past the pivot toward the miter tip and a fan is drawn
    // on top. Exists only so tests can measure the overlap it causes.
    kLegacyOverlap,
};

std::vector<TriangleBatch> legacy_overlap_batches(const Polyline& line, const StrokeStyle& style);

// Fits the scene to the viewport (margin kSceneMargin), renders it, and
// returns the number of pixels inside a single stroke that were written
// more than once with alpha > 0.
std::int64_t measure_overlap(const Scene& scene, const StrokeStyle& style, Viewport viewport,
                             StrokeTessellation tessellation = StrokeTessellation::kStandard);

constexpr double kSceneMargin = 16.0;

// Renders one join of the given turn angle at large scale, scans rays
// from the pivot across the wedge at 1 degree spacing, locates the
// alpha = 0.5 iso-contour by bisection on bilinearly sampled alpha, and
// returns the maximum |radius - expected| in pixels. The alpha model
// puts the 0.5 contour at (W/2) * (1 + N) / 2.
double arc_fidelity(const StrokeStyle& style, double turn_angle, Viewport viewport);

// Ground-truth alpha map: per pixel, the mean over an s x s subsample
// grid of alpha(dist(point, nearest centerline) / (W/2)). Independent
// of the tessellation and rasterization paths. Lines are in screen
// space; callers fit scenes first. Requires s >= 4.
std::vector<double> oracle_render(const std::vector<Polyline>& lines, const StrokeStyle& style,
                                  Viewport viewport, int supersample);

struct MethodStats {
    RenderStats render;
    std::int64_t draw_calls_per_feature = 0;
    std::int64_t draw_calls_batched = 0;
};

struct ComparisonRow {
    int network_id = 0;
    std::int64_t joins = 0;
    MethodStats proposed;
    MethodStats fan;
};

struct ComparisonAverages {
    double proposed_calls_per_feature = 0.0;
    double fan_calls_per_feature = 0.0;
    double proposed_calls_batched = 0.0;
    double fan_calls_batched = 0.0;
    double proposed_triangles = 0.0;
    double fan_triangles = 0.0;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    ComparisonAverages averages;
    double fan_step = 0.0;

    std::string to_tsv() const;
    std::string to_json() const;
};

// Renders every network with both join methods (fan step taken from
// style.join_method.fan_step) and collects the stats per row plus the
// aggregate averages. Rows keep the input order; network ids are 1-based.
ComparisonReport compare_methods(const std::vector<Scene>& networks, const StrokeStyle& style,
                                 Viewport viewport);

} // namespace arcjoin

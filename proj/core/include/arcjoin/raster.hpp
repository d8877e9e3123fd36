#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arcjoin/polyline.hpp"
#include "arcjoin/stroke.hpp"

namespace arcjoin {

struct Viewport {
    int width = 0;
    int height = 0;
};

// One covered pixel. attr is the affine interpolation of the vertex
// attrs at the pixel center (x+0.5, y+0.5).
struct Fragment {
    int x = 0;
    int y = 0;
    Vec2 attr;
};

struct RenderStats {
    std::int64_t draw_calls = 0;
    std::int64_t triangles = 0;
    std::int64_t fragments_shaded = 0;
    std::int64_t overlap_pixels = 0;

    // Run tracking for Batched accounting across draw_batch calls.
    std::optional<BatchLabel> last_batch_label;
};

// RGBA pixel grid with straight (non-premultiplied) alpha and a
// per-pixel write counter scoped to the current stroke.
struct Framebuffer {
    int width = 0;
    int height = 0;
    std::vector<Rgba> pixels;
    std::vector<std::uint16_t> write_count;

    Framebuffer() = default;
    Framebuffer(int w, int h, Rgba background = {0, 0, 0, 0});

    void clear(Rgba background);
    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
    Rgba& at(int x, int y) { return pixels[index(x, y)]; }
    const Rgba& at(int x, int y) const { return pixels[index(x, y)]; }

    bool operator==(const Framebuffer&) const = default;
};

// d = |attr|. Opaque for d <= N, transparent for d >= 1, linear ramp
// (1-d)/(1-N) in between. Requires N in [0, 1).
double fragment_alpha(Vec2 attr, double aa_threshold);

// Source-over with coverage: effective source alpha is src.a * alpha.
Rgba blend_source_over(Rgba dst, Rgba src, double alpha);

// Pixels whose centers lie inside the triangle, top-left rule on
// boundary pixels. Coverage is decided on coordinates snapped to a
// 1/256 px grid so triangles sharing an edge shade each boundary pixel
// exactly once; attrs interpolate from the unsnapped positions.
std::vector<Fragment> rasterize_triangle(const AAVertex& v0, const AAVertex& v1,
                                         const AAVertex& v2, Viewport viewport);

// Rasterize + shade + blend one batch. write_count is incremented for
// every fragment with alpha > 0; call finalize_stroke_scope when the
// batches of one stroke are done.
void draw_batch(Framebuffer& fb, const TriangleBatch& batch, const StrokeStyle& style,
                RenderStats& stats, AccountingMode accounting = AccountingMode::kPerFeature);

// Ends a stroke scope: adds pixels with write_count >= 2 to
// stats.overlap_pixels and resets the counters.
void finalize_stroke_scope(Framebuffer& fb, RenderStats& stats);

struct RenderOptions {
    int threads = 1;
    AccountingMode accounting = AccountingMode::kPerFeature;
    Rgba background = {0, 0, 0, 0};
};

struct SceneRender {
    Framebuffer framebuffer;
    RenderStats stats;
};

// Draws pre-tessellated strokes (one batch list per stroke) in order.
// Output is a pure function of the inputs: any thread count yields a
// bit-identical framebuffer.
SceneRender render_stroke_batches(const std::vector<std::vector<TriangleBatch>>& strokes,
                                  const StrokeStyle& style, Viewport viewport,
                                  const RenderOptions& options = {});

// Tessellates and draws the polylines in list order.
SceneRender render_scene(const std::vector<Polyline>& lines, const StrokeStyle& style,
                         Viewport viewport, const RenderOptions& options = {});

} // namespace arcjoin

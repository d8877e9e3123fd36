#include "arcjoin/raster.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "arcjoin/tessellate.hpp"

namespace arcjoin {

namespace {

// Coverage runs on a 1/256 px integer grid. Snapped coordinates are
// clamped to +-2^30 units (+-4.2M px) so 64-bit edge functions cannot
// overflow; screen-space stroke geometry never gets near that.
constexpr int kSubpixelBits = 8;
constexpr std::int64_t kSubpixelScale = 1 << kSubpixelBits;
constexpr std::int64_t kCoordLimit = std::int64_t{1} << 30;

inline std::int64_t snap(double v) {
    const double scaled = v * static_cast<double>(kSubpixelScale);
    const double clamped = std::clamp(scaled, -static_cast<double>(kCoordLimit),
                                      static_cast<double>(kCoordLimit));
    return std::llround(clamped);
}

struct SnappedVec {
    std::int64_t x;
    std::int64_t y;
};

inline bool edge_is_top_left(std::int64_t dx, std::int64_t dy) {
    // With positive-area winding: horizontal edges with the interior
    // below them (dx > 0) are top edges; edges going up (dy < 0) are
    // left edges. Exactly one of two triangles sharing an edge owns it.
    return dy == 0 ? dx > 0 : dy < 0;
}

// Calls fn(x, y, attr) for every covered pixel with y in [y_begin, y_end).
template <typename Fn>
void for_each_fragment(const AAVertex& in0, const AAVertex& in1, const AAVertex& in2,
                       Viewport viewport, int y_begin, int y_end, Fn&& fn) {
    AAVertex v0 = in0, v1 = in1, v2 = in2;
    SnappedVec s0{snap(v0.position.x), snap(v0.position.y)};
    SnappedVec s1{snap(v1.position.x), snap(v1.position.y)};
    SnappedVec s2{snap(v2.position.x), snap(v2.position.y)};

    std::int64_t area2 = (s1.x - s0.x) * (s2.y - s0.y) - (s1.y - s0.y) * (s2.x - s0.x);
    if (area2 == 0) {
        return;
    }
    if (area2 < 0) {
        std::swap(v1, v2);
        std::swap(s1, s2);
        area2 = -area2;
    }

    const std::int64_t min_x = std::min({s0.x, s1.x, s2.x});
    const std::int64_t max_x = std::max({s0.x, s1.x, s2.x});
    const std::int64_t min_y = std::min({s0.y, s1.y, s2.y});
    const std::int64_t max_y = std::max({s0.y, s1.y, s2.y});

    // First and last pixel whose center can be covered: smallest px with
    // px*256+128 >= min_x, largest with px*256+128 <= max_x.
    int px0 = static_cast<int>((min_x + kSubpixelScale / 2 - 1) >> kSubpixelBits);
    int px1 = static_cast<int>((max_x - kSubpixelScale / 2) >> kSubpixelBits);
    int py0 = static_cast<int>((min_y + kSubpixelScale / 2 - 1) >> kSubpixelBits);
    int py1 = static_cast<int>((max_y - kSubpixelScale / 2) >> kSubpixelBits);
    px0 = std::max(px0, 0);
    py0 = std::max(py0, y_begin);
    px1 = std::min(px1, viewport.width - 1);
    py1 = std::min(py1, y_end - 1);
    if (px0 > px1 || py0 > py1) {
        return;
    }

    struct Edge {
        std::int64_t dx, dy; // edge vector
        std::int64_t bias;   // -1 unless the edge is top-left
        std::int64_t w_row;  // value at the current row's first pixel center
        std::int64_t step_x, step_y;
    };
    const SnappedVec* sv[3] = {&s0, &s1, &s2};
    Edge edges[3];
    const std::int64_t cx0 = static_cast<std::int64_t>(px0) * kSubpixelScale + kSubpixelScale / 2;
    const std::int64_t cy0 = static_cast<std::int64_t>(py0) * kSubpixelScale + kSubpixelScale / 2;
    for (int i = 0; i < 3; ++i) {
        const SnappedVec& a = *sv[i];
        const SnappedVec& b = *sv[(i + 1) % 3];
        Edge& e = edges[i];
        e.dx = b.x - a.x;
        e.dy = b.y - a.y;
        e.bias = edge_is_top_left(e.dx, e.dy) ? 0 : -1;
        e.w_row = e.dx * (cy0 - a.y) - e.dy * (cx0 - a.x) + e.bias;
        e.step_x = -e.dy * kSubpixelScale;
        e.step_y = e.dx * kSubpixelScale;
    }

    // Attribute interpolation uses the unsnapped positions: the attrs
    // are affine over the true triangle, so barycentric interpolation
    // reproduces that map exactly (up to rounding).
    const Vec2 p0 = v0.position, p1 = v1.position, p2 = v2.position;
    const double inv_area2 = 1.0 / cross(p1 - p0, p2 - p0);

    for (int py = py0; py <= py1; ++py) {
        std::int64_t w0 = edges[0].w_row;
        std::int64_t w1 = edges[1].w_row;
        std::int64_t w2 = edges[2].w_row;
        for (int px = px0; px <= px1; ++px) {
            if ((w0 | w1 | w2) >= 0) {
                const Vec2 c{px + 0.5, py + 0.5};
                const double l0 = cross(p2 - p1, c - p1) * inv_area2;
                const double l1 = cross(p0 - p2, c - p2) * inv_area2;
                const double l2 = 1.0 - l0 - l1;
                const Vec2 attr = v0.attr * l0 + v1.attr * l1 + v2.attr * l2;
                fn(px, py, attr);
            }
            w0 += edges[0].step_x;
            w1 += edges[1].step_x;
            w2 += edges[2].step_x;
        }
        edges[0].w_row += edges[0].step_y;
        edges[1].w_row += edges[1].step_y;
        edges[2].w_row += edges[2].step_y;
    }
}

std::int64_t draw_call_increment(const TriangleBatch& batch, AccountingMode accounting,
                                 std::optional<BatchLabel>& last_label) {
    std::int64_t calls = 0;
    switch (accounting) {
    case AccountingMode::kPerFeature:
        // The fan baseline splices its triangles at varying scale
        // levels, so each fan triangle is its own submission; bodies
        // and proposed joins go up as one batch each.
        calls = batch.label == BatchLabel::kJoinFan
                    ? static_cast<std::int64_t>(batch.triangle_count())
                    : 1;
        break;
    case AccountingMode::kBatched:
        calls = (!last_label || *last_label != batch.label) ? 1 : 0;
        break;
    }
    last_label = batch.label;
    return calls;
}

void shade_batch_rows(Framebuffer& fb, const TriangleBatch& batch, const StrokeStyle& style,
                      int y_begin, int y_end, std::int64_t& fragments,
                      std::vector<std::int32_t>& dirty) {
    const Viewport viewport{fb.width, fb.height};
    for (std::size_t i = 0; i + 3 <= batch.vertices.size(); i += 3) {
        for_each_fragment(
            batch.vertices[i], batch.vertices[i + 1], batch.vertices[i + 2], viewport, y_begin,
            y_end, [&](int px, int py, Vec2 attr) {
                ++fragments;
                const double alpha = fragment_alpha(attr, style.aa_threshold);
                if (alpha <= 0.0) {
                    return;
                }
                const std::size_t idx = fb.index(px, py);
                fb.pixels[idx] = blend_source_over(fb.pixels[idx], style.color, alpha);
                if (fb.write_count[idx]++ == 0) {
                    dirty.push_back(static_cast<std::int32_t>(idx));
                }
            });
    }
}

} // namespace

Framebuffer::Framebuffer(int w, int h, Rgba background) : width(w), height(h) {
    if (w < 1 || h < 1) {
        throw ValidationError("framebuffer dimensions must be >= 1");
    }
    pixels.assign(static_cast<std::size_t>(w) * h, background);
    write_count.assign(static_cast<std::size_t>(w) * h, 0);
}

void Framebuffer::clear(Rgba background) {
    std::fill(pixels.begin(), pixels.end(), background);
    std::fill(write_count.begin(), write_count.end(), std::uint16_t{0});
}

double fragment_alpha(Vec2 attr, double aa_threshold) {
    const double d = norm(attr);
    if (d <= aa_threshold) {
        return 1.0;
    }
    if (d >= 1.0) {
        return 0.0;
    }
    return (1.0 - d) / (1.0 - aa_threshold);
}

Rgba blend_source_over(Rgba dst, Rgba src, double alpha) {
    const float a = src.a * static_cast<float>(alpha);
    const float ia = 1.0f - a;
    return {src.r * a + dst.r * ia, src.g * a + dst.g * ia, src.b * a + dst.b * ia,
            a + dst.a * ia};
}

std::vector<Fragment> rasterize_triangle(const AAVertex& v0, const AAVertex& v1,
                                         const AAVertex& v2, Viewport viewport) {
    std::vector<Fragment> out;
    for_each_fragment(v0, v1, v2, viewport, 0, viewport.height,
                      [&](int px, int py, Vec2 attr) { out.push_back({px, py, attr}); });
    return out;
}

void draw_batch(Framebuffer& fb, const TriangleBatch& batch, const StrokeStyle& style,
                RenderStats& stats, AccountingMode accounting) {
    stats.draw_calls += draw_call_increment(batch, accounting, stats.last_batch_label);
    stats.triangles += static_cast<std::int64_t>(batch.triangle_count());
    std::vector<std::int32_t> dirty;
    shade_batch_rows(fb, batch, style, 0, fb.height, stats.fragments_shaded, dirty);
}

void finalize_stroke_scope(Framebuffer& fb, RenderStats& stats) {
    for (std::uint16_t& c : fb.write_count) {
        if (c >= 2) {
            ++stats.overlap_pixels;
        }
        c = 0;
    }
}

SceneRender render_stroke_batches(const std::vector<std::vector<TriangleBatch>>& strokes,
                                  const StrokeStyle& style, Viewport viewport,
                                  const RenderOptions& options) {
    if (viewport.width < 1 || viewport.height < 1) {
        throw ValidationError("viewport dimensions must be >= 1");
    }
    validate_style(style);
    const int threads = std::max(options.threads, 1);

    SceneRender out{Framebuffer(viewport.width, viewport.height, options.background), {}};
    Framebuffer& fb = out.framebuffer;
    RenderStats& stats = out.stats;

    std::vector<std::vector<std::int32_t>> dirty(static_cast<std::size_t>(threads));
    std::vector<std::int64_t> fragments(static_cast<std::size_t>(threads), 0);

    for (const std::vector<TriangleBatch>& stroke : strokes) {
        for (const TriangleBatch& batch : stroke) {
            stats.draw_calls +=
                draw_call_increment(batch, options.accounting, stats.last_batch_label);
            stats.triangles += static_cast<std::int64_t>(batch.triangle_count());
        }

        if (threads == 1) {
            for (const TriangleBatch& batch : stroke) {
                shade_batch_rows(fb, batch, style, 0, fb.height, fragments[0], dirty[0]);
            }
        } else {
            // Horizontal bands: rows are disjoint between workers and
            // each worker applies triangles in submission order, so the
            // per-pixel blend sequence is independent of the thread
            // count.
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(threads));
            const int rows = fb.height;
            for (int t = 0; t < threads; ++t) {
                const int y0 = static_cast<int>(static_cast<std::int64_t>(rows) * t / threads);
                const int y1 = static_cast<int>(static_cast<std::int64_t>(rows) * (t + 1) / threads);
                pool.emplace_back([&, t, y0, y1] {
                    for (const TriangleBatch& batch : stroke) {
                        shade_batch_rows(fb, batch, style, y0, y1,
                                         fragments[static_cast<std::size_t>(t)],
                                         dirty[static_cast<std::size_t>(t)]);
                    }
                });
            }
            for (std::thread& th : pool) {
                th.join();
            }
        }

        // Close the stroke scope using the touched-pixel lists.
        for (std::vector<std::int32_t>& list : dirty) {
            for (std::int32_t idx : list) {
                if (fb.write_count[static_cast<std::size_t>(idx)] >= 2) {
                    ++stats.overlap_pixels;
                }
                fb.write_count[static_cast<std::size_t>(idx)] = 0;
            }
            list.clear();
        }
    }
    for (std::int64_t f : fragments) {
        stats.fragments_shaded += f;
    }
    return out;
}

SceneRender render_scene(const std::vector<Polyline>& lines, const StrokeStyle& style,
                         Viewport viewport, const RenderOptions& options) {
    std::vector<std::vector<TriangleBatch>> strokes;
    strokes.reserve(lines.size());
    for (const Polyline& line : lines) {
        strokes.push_back(tessellate_polyline(line, style));
    }
    return render_stroke_batches(strokes, style, viewport, options);
}

} // namespace arcjoin

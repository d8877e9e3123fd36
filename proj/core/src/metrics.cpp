#include "arcjoin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "arcjoin/errors.hpp"
#include "arcjoin/join.hpp"

namespace arcjoin {

std::int64_t count_draw_calls(const std::vector<TriangleBatch>& batches, AccountingMode mode) {
    std::int64_t calls = 0;
    if (mode == AccountingMode::kPerFeature) {
        for (const TriangleBatch& batch : batches) {
            calls += batch.label == BatchLabel::kJoinFan
                         ? static_cast<std::int64_t>(batch.triangle_count())
                         : 1;
        }
    } else {
        const TriangleBatch* prev = nullptr;
        for (const TriangleBatch& batch : batches) {
            if (prev == nullptr || prev->label != batch.label) {
                ++calls;
            }
            prev = &batch;
        }
    }
    return calls;
}

std::vector<TriangleBatch> legacy_overlap_batches(const Polyline& line, const StrokeStyle& style) {
    validate_polyline(line);
    validate_style(style);

    const std::vector<Vec2>& v = line.vertices;
    const std::size_t seg_count = v.size() - 1;
    const double half = style.width * 0.5;
    const double fan_step = style.join_method.kind == JoinMethodKind::kFan
                                ? style.join_method.fan_step
                                : 10.0 * M_PI / 180.0;

    std::vector<Vec2> dirs(seg_count);
    std::vector<double> lens(seg_count);
    for (std::size_t s = 0; s < seg_count; ++s) {
        lens[s] = distance(v[s], v[s + 1]);
        dirs[s] = (v[s + 1] - v[s]) / lens[s];
    }

    std::vector<std::optional<JoinGeometry>> joins(seg_count - 1);
    for (std::size_t j = 0; j + 1 < seg_count; ++j) {
        const double theta = std::abs(signed_turn_angle(dirs[j], dirs[j + 1]));
        if (theta < kCollinearEps || theta > M_PI - kReversalEps) {
            continue;
        }
        joins[j] = make_join(v[j], v[j + 1], v[j + 2], style.width);
    }

    std::vector<TriangleBatch> batches;
    for (std::size_t s = 0; s < seg_count; ++s) {
        // Extend each quad end toward the miter tip of the adjacent
        // join; the two extended quads then repaint the corner that the
        // fan overlay paints again.
        Vec2 p0 = v[s];
        Vec2 p1 = v[s + 1];
        if (s > 0 && joins[s - 1]) {
            const double ext = std::min(half * std::tan(joins[s - 1]->turn_angle * 0.5), lens[s]);
            p0 = p0 - dirs[s] * ext;
        }
        if (s + 1 < v.size() - 1 && joins[s]) {
            const double ext = std::min(half * std::tan(joins[s]->turn_angle * 0.5), lens[s]);
            p1 = p1 + dirs[s] * ext;
        }
        batches.push_back(tessellate_segment(p0, p1, style));
        if (s + 1 < seg_count && joins[s]) {
            batches.push_back(tessellate_join_fan(*joins[s], style, fan_step));
        }
    }
    return batches;
}

std::int64_t measure_overlap(const Scene& scene, const StrokeStyle& style, Viewport viewport,
                             StrokeTessellation tessellation) {
    const FitTransform t = fit_viewport(scene, viewport, kSceneMargin);
    const std::vector<Polyline> lines = apply_transform(scene.polylines, t);

    std::vector<std::vector<TriangleBatch>> strokes;
    strokes.reserve(lines.size());
    for (const Polyline& line : lines) {
        strokes.push_back(tessellation == StrokeTessellation::kStandard
                              ? tessellate_polyline(line, style)
                              : legacy_overlap_batches(line, style));
    }
    return render_stroke_batches(strokes, style, viewport).stats.overlap_pixels;
}

namespace {

double bilinear_alpha(const Framebuffer& fb, double x, double y) {
    // Sample the alpha plane at a continuous position, interpolating
    // between the four surrounding pixel centers.
    const double fx = std::clamp(x - 0.5, 0.0, static_cast<double>(fb.width - 1));
    const double fy = std::clamp(y - 0.5, 0.0, static_cast<double>(fb.height - 1));
    const int x0 = std::min(static_cast<int>(fx), fb.width - 2);
    const int y0 = std::min(static_cast<int>(fy), fb.height - 2);
    const double tx = fx - x0;
    const double ty = fy - y0;
    const double a00 = fb.at(x0, y0).a;
    const double a10 = fb.at(x0 + 1, y0).a;
    const double a01 = fb.at(x0, y0 + 1).a;
    const double a11 = fb.at(x0 + 1, y0 + 1).a;
    return (a00 * (1 - tx) + a10 * tx) * (1 - ty) + (a01 * (1 - tx) + a11 * tx) * ty;
}

} // namespace

double arc_fidelity(const StrokeStyle& style, double turn_angle, Viewport viewport) {
    if (!(turn_angle > 0.0 && turn_angle < M_PI)) {
        throw ValidationError("arc_fidelity: turn angle must be in (0, pi)");
    }
    const double half = style.width * 0.5;
    const Vec2 pivot{viewport.width * 0.5, viewport.height * 0.5};
    const double leg = 0.35 * std::min(viewport.width, viewport.height);

    // Symmetric left turn around the viewport center.
    const Vec2 dir_in = rotate({1.0, 0.0}, -turn_angle * 0.5);
    const Vec2 dir_out = rotate({1.0, 0.0}, turn_angle * 0.5);
    Polyline line;
    line.vertices = {pivot - dir_in * leg, pivot, pivot + dir_out * leg};

    StrokeStyle render_style = style;
    render_style.color = {1, 1, 1, 1}; // alpha plane carries the coverage
    const SceneRender render = render_scene({line}, render_style, viewport);

    const auto join = make_join(line.vertices[0], line.vertices[1], line.vertices[2], style.width);
    const Vec2 n_in = join->normal_in();
    const double sweep = join->sweep_sign();

    const double expected_r = half * (1.0 + style.aa_threshold) * 0.5;
    const double r_max = half + 4.0;
    double worst = 0.0;

    const double step = M_PI / 180.0;
    for (double u = step * 0.5; u < join->turn_angle; u += step) {
        const Vec2 ray = rotate(n_in, sweep * u);
        double lo = 0.0;
        double hi = r_max;
        const Vec2 pl = pivot + ray * lo;
        const Vec2 ph = pivot + ray * hi;
        double alpha_lo = bilinear_alpha(render.framebuffer, pl.x, pl.y);
        double alpha_hi = bilinear_alpha(render.framebuffer, ph.x, ph.y);
        if (!(alpha_lo >= 0.5 && alpha_hi < 0.5)) {
            // No crossing along this ray: count the full expected radius
            // as deviation rather than silently skipping.
            worst = std::max(worst, expected_r);
            continue;
        }
        for (int iter = 0; iter < 60; ++iter) {
            const double mid = (lo + hi) * 0.5;
            const Vec2 pm = pivot + ray * mid;
            if (bilinear_alpha(render.framebuffer, pm.x, pm.y) >= 0.5) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        worst = std::max(worst, std::abs((lo + hi) * 0.5 - expected_r));
    }
    return worst;
}

std::vector<double> oracle_render(const std::vector<Polyline>& lines, const StrokeStyle& style,
                                  Viewport viewport, int supersample) {
    if (supersample < 4) {
        throw ValidationError("oracle_render: supersample must be >= 4");
    }
    validate_style(style);
    const double half = style.width * 0.5;

    struct Segment {
        Vec2 a, b;
    };
    std::vector<Segment> segments;
    for (const Polyline& line : lines) {
        validate_polyline(line);
        for (std::size_t i = 0; i + 1 < line.vertices.size(); ++i) {
            segments.push_back({line.vertices[i], line.vertices[i + 1]});
        }
    }

    // Coarse grid so each pixel only tests nearby segments.
    constexpr int kCell = 16;
    const int gw = (viewport.width + kCell - 1) / kCell;
    const int gh = (viewport.height + kCell - 1) / kCell;
    std::vector<std::vector<std::int32_t>> cells(static_cast<std::size_t>(gw) * gh);
    const double reach = half + 1.5;
    for (std::size_t si = 0; si < segments.size(); ++si) {
        const Segment& s = segments[si];
        const int cx0 = std::clamp(static_cast<int>((std::min(s.a.x, s.b.x) - reach) / kCell), 0,
                                   gw - 1);
        const int cx1 = std::clamp(static_cast<int>((std::max(s.a.x, s.b.x) + reach) / kCell), 0,
                                   gw - 1);
        const int cy0 = std::clamp(static_cast<int>((std::min(s.a.y, s.b.y) - reach) / kCell), 0,
                                   gh - 1);
        const int cy1 = std::clamp(static_cast<int>((std::max(s.a.y, s.b.y) + reach) / kCell), 0,
                                   gh - 1);
        for (int cy = cy0; cy <= cy1; ++cy) {
            for (int cx = cx0; cx <= cx1; ++cx) {
                cells[static_cast<std::size_t>(cy) * gw + cx].push_back(
                    static_cast<std::int32_t>(si));
            }
        }
    }

    auto distance_to = [&](Vec2 p, const Segment& s) {
        const Vec2 ab = s.b - s.a;
        const double t = std::clamp(dot(p - s.a, ab) / dot(ab, ab), 0.0, 1.0);
        return distance(p, s.a + ab * t);
    };

    std::vector<double> alpha(static_cast<std::size_t>(viewport.width) * viewport.height, 0.0);
    const double inv_s = 1.0 / supersample;
    const double inv_samples = 1.0 / (static_cast<double>(supersample) * supersample);

    for (int py = 0; py < viewport.height; ++py) {
        for (int px = 0; px < viewport.width; ++px) {
            const std::vector<std::int32_t>& local =
                cells[static_cast<std::size_t>(py / kCell) * gw + px / kCell];
            if (local.empty()) {
                continue;
            }
            // Whole pixel out of reach: skip the subsample grid.
            const Vec2 center{px + 0.5, py + 0.5};
            double center_dist = std::numeric_limits<double>::infinity();
            for (std::int32_t si : local) {
                center_dist = std::min(center_dist, distance_to(center, segments[si]));
            }
            if (center_dist > half + 1.0) {
                continue;
            }
            double acc = 0.0;
            for (int sy = 0; sy < supersample; ++sy) {
                for (int sx = 0; sx < supersample; ++sx) {
                    const Vec2 p{px + (sx + 0.5) * inv_s, py + (sy + 0.5) * inv_s};
                    double dist = std::numeric_limits<double>::infinity();
                    for (std::int32_t si : local) {
                        dist = std::min(dist, distance_to(p, segments[si]));
                    }
                    acc += fragment_alpha({dist / half, 0.0}, style.aa_threshold);
                }
            }
            alpha[static_cast<std::size_t>(py) * viewport.width + px] = acc * inv_samples;
        }
    }
    return alpha;
}

namespace {

MethodStats run_method(const std::vector<Polyline>& lines, const StrokeStyle& style,
                       Viewport viewport) {
    std::vector<std::vector<TriangleBatch>> strokes;
    strokes.reserve(lines.size());
    std::int64_t pf = 0;
    std::int64_t batched = 0;
    for (const Polyline& line : lines) {
        strokes.push_back(tessellate_polyline(line, style));
        pf += count_draw_calls(strokes.back(), AccountingMode::kPerFeature);
        batched += count_draw_calls(strokes.back(), AccountingMode::kBatched);
    }
    MethodStats stats;
    stats.render = render_stroke_batches(strokes, style, viewport).stats;
    stats.draw_calls_per_feature = pf;
    stats.draw_calls_batched = batched;
    return stats;
}

} // namespace

ComparisonReport compare_methods(const std::vector<Scene>& networks, const StrokeStyle& style,
                                 Viewport viewport) {
    if (networks.empty()) {
        throw ValidationError("compare_methods: need at least one network");
    }
    const double fan_step = style.join_method.kind == JoinMethodKind::kFan
                                ? style.join_method.fan_step
                                : 10.0 * M_PI / 180.0;

    StrokeStyle proposed_style = style;
    proposed_style.join_method = JoinMethod::proposed();
    StrokeStyle fan_style = style;
    fan_style.join_method = JoinMethod::fan(fan_step);

    ComparisonReport report;
    report.fan_step = fan_step;
    report.rows.reserve(networks.size());

    for (std::size_t i = 0; i < networks.size(); ++i) {
        const FitTransform t = fit_viewport(networks[i], viewport, kSceneMargin);
        const std::vector<Polyline> lines = apply_transform(networks[i].polylines, t);

        ComparisonRow row;
        row.network_id = static_cast<int>(i) + 1;
        row.proposed = run_method(lines, proposed_style, viewport);
        row.fan = run_method(lines, fan_style, viewport);
        for (const Polyline& line : lines) {
            for (const TriangleBatch& batch : tessellate_polyline(line, proposed_style)) {
                if (batch.label != BatchLabel::kSegmentBody) {
                    ++row.joins;
                }
            }
        }
        report.rows.push_back(row);
    }

    const double inv = 1.0 / static_cast<double>(report.rows.size());
    for (const ComparisonRow& row : report.rows) {
        report.averages.proposed_calls_per_feature += row.proposed.draw_calls_per_feature * inv;
        report.averages.fan_calls_per_feature += row.fan.draw_calls_per_feature * inv;
        report.averages.proposed_calls_batched += row.proposed.draw_calls_batched * inv;
        report.averages.fan_calls_batched += row.fan.draw_calls_batched * inv;
        report.averages.proposed_triangles += row.proposed.render.triangles * inv;
        report.averages.fan_triangles += row.fan.render.triangles * inv;
    }
    return report;
}

std::string ComparisonReport::to_tsv() const {
    std::ostringstream out;
    out << "network\tjoins\tproposed_calls\tfan_calls\tproposed_calls_batched\t"
           "fan_calls_batched\tproposed_triangles\tfan_triangles\tproposed_overlap\t"
           "fan_overlap\n";
    for (const ComparisonRow& row : rows) {
        out << row.network_id << '\t' << row.joins << '\t' << row.proposed.draw_calls_per_feature
            << '\t' << row.fan.draw_calls_per_feature << '\t' << row.proposed.draw_calls_batched
            << '\t' << row.fan.draw_calls_batched << '\t' << row.proposed.render.triangles << '\t'
            << row.fan.render.triangles << '\t' << row.proposed.render.overlap_pixels << '\t'
            << row.fan.render.overlap_pixels << '\n';
    }
    out << "average\t-\t" << averages.proposed_calls_per_feature << '\t'
        << averages.fan_calls_per_feature << '\t' << averages.proposed_calls_batched << '\t'
        << averages.fan_calls_batched << '\t' << averages.proposed_triangles << '\t'
        << averages.fan_triangles << "\t-\t-\n";
    return out.str();
}

std::string ComparisonReport::to_json() const {
    nlohmann::json doc;
    doc["fan_step_degrees"] = fan_step * 180.0 / M_PI;
    doc["rows"] = nlohmann::json::array();
    auto method_json = [](const MethodStats& m) {
        return nlohmann::json{{"draw_calls_per_feature", m.draw_calls_per_feature},
                              {"draw_calls_batched", m.draw_calls_batched},
                              {"triangles", m.render.triangles},
                              {"fragments_shaded", m.render.fragments_shaded},
                              {"overlap_pixels", m.render.overlap_pixels}};
    };
    for (const ComparisonRow& row : rows) {
        doc["rows"].push_back({{"network", row.network_id},
                               {"joins", row.joins},
                               {"proposed", method_json(row.proposed)},
                               {"fan", method_json(row.fan)}});
    }
    doc["averages"] = {{"proposed_calls_per_feature", averages.proposed_calls_per_feature},
                       {"fan_calls_per_feature", averages.fan_calls_per_feature},
                       {"proposed_calls_batched", averages.proposed_calls_batched},
                       {"fan_calls_batched", averages.fan_calls_batched},
                       {"proposed_triangles", averages.proposed_triangles},
                       {"fan_triangles", averages.fan_triangles}};
    return doc.dump(2);
}

} // namespace arcjoin

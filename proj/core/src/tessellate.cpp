#include "arcjoin/tessellate.hpp"

#include <algorithm>
#include <cmath>

namespace arcjoin {

namespace {

constexpr double kMinTriangleArea = 1e-12; // px^2

// Offset a centerline point to the stroke edge. Join construction and
// body corners must go through the same expression so shared vertices
// stay bit-identical.
inline Vec2 offset_point(Vec2 p, Vec2 dir, Side side, double half) {
    return p + perp(dir, side) * half;
}

inline double triangle_area2(Vec2 a, Vec2 b, Vec2 c) {
    return cross(b - a, c - a);
}

void push_triangle(TriangleBatch& batch, AAVertex a, AAVertex b, AAVertex c) {
    if (std::abs(triangle_area2(a.position, b.position, c.position)) * 0.5 <= kMinTriangleArea) {
        return;
    }
    batch.vertices.push_back(a);
    batch.vertices.push_back(b);
    batch.vertices.push_back(c);
}

// Inner-side pullback at one join, shared by both adjoining bodies.
struct InnerTrim {
    Vec2 v;          // shared vertex on the inner bisector
    Vec2 q_in;       // pullback point on the incoming segment's inner edge
    Vec2 q_out;      // pullback point on the outgoing segment's inner edge
    double attr_y_v; // |attr.y| of v (1 when unclamped, < 1 when clamped)
    Side inner;      // inner side of the turn
    bool clamped;
};

struct JoinSlot {
    std::optional<JoinGeometry> geometry;
    std::optional<InnerTrim> trim;
};

// One end of a body polygon: outer corner on the pivot perpendicular,
// plus the inner pullback chain when a join trims this end.
struct BodyEnd {
    Vec2 outer;
    Vec2 inner; // plain corner when no trim, else the Q point
    std::optional<Vec2> v;
    double inner_attr_y_abs = 1.0;
    double v_attr_y_abs = 1.0;
    bool inner_is_left = false;
};

AAVertex body_vertex(Vec2 pos, double attr_y) { return {pos, {0.0, attr_y}}; }

// Triangulates the 4..6-gon described by the two ends. Vertex order is
// start-left..start-right, end-right..end-left, which for a plain
// rectangle yields the fixed diagonal split (p0L,p0R,p1R)/(p0L,p1R,p1L).
TriangleBatch triangulate_body(const BodyEnd& start, const BodyEnd& end) {
    std::vector<AAVertex> ring;
    ring.reserve(6);

    // Start edge, walking left to right.
    if (start.v && start.inner_is_left) {
        ring.push_back(body_vertex(start.inner, +start.inner_attr_y_abs));
        ring.push_back(body_vertex(*start.v, +start.v_attr_y_abs));
        ring.push_back(body_vertex(start.outer, -1.0));
    } else if (start.v) {
        ring.push_back(body_vertex(start.outer, +1.0));
        ring.push_back(body_vertex(*start.v, -start.v_attr_y_abs));
        ring.push_back(body_vertex(start.inner, -start.inner_attr_y_abs));
    } else {
        // inner/outer are left/right corners here
        ring.push_back(body_vertex(start.outer, +1.0));
        ring.push_back(body_vertex(start.inner, -1.0));
    }

    // End edge, walking right to left.
    if (end.v && end.inner_is_left) {
        ring.push_back(body_vertex(end.outer, -1.0));
        ring.push_back(body_vertex(*end.v, +end.v_attr_y_abs));
        ring.push_back(body_vertex(end.inner, +end.inner_attr_y_abs));
    } else if (end.v) {
        ring.push_back(body_vertex(end.inner, -end.inner_attr_y_abs));
        ring.push_back(body_vertex(*end.v, -end.v_attr_y_abs));
        ring.push_back(body_vertex(end.outer, +1.0));
    } else {
        ring.push_back(body_vertex(end.outer, -1.0));
        ring.push_back(body_vertex(end.inner, +1.0));
    }

    TriangleBatch batch;
    batch.label = BatchLabel::kSegmentBody;

    // Fan from vertex 0; the ring is convex for every trim combination,
    // but fall back to a centroid fan if a signed area ever flips.
    // Unclamped trims leave duplicate ring vertices whose degenerate
    // triangles are dropped, so compare against the ring orientation.
    double ring_area2 = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const std::size_t j = (i + 1) % ring.size();
        ring_area2 += cross(ring[i].position, ring[j].position);
    }
    bool fan_ok = true;
    for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
        const double a2 = triangle_area2(ring[0].position, ring[i].position, ring[i + 1].position);
        if (a2 * ring_area2 < -kMinTriangleArea) {
            fan_ok = false;
            break;
        }
    }
    if (fan_ok) {
        for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
            push_triangle(batch, ring[0], ring[i], ring[i + 1]);
        }
    } else {
        AAVertex centroid{{0, 0}, {0, 0}};
        for (const AAVertex& v : ring) {
            centroid.position = centroid.position + v.position;
            centroid.attr = centroid.attr + v.attr;
        }
        const double inv = 1.0 / static_cast<double>(ring.size());
        centroid.position = centroid.position * inv;
        centroid.attr = centroid.attr * inv;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            push_triangle(batch, centroid, ring[i], ring[(i + 1) % ring.size()]);
        }
    }
    return batch;
}

} // namespace

void validate_style(const StrokeStyle& style) {
    if (!(style.width > 0.0) || !std::isfinite(style.width)) {
        throw ValidationError("stroke width must be positive");
    }
    if (!(style.aa_threshold >= 0.0 && style.aa_threshold < 1.0)) {
        throw ValidationError("aa threshold must be in [0, 1)");
    }
    if (!(style.miter_limit > 1.0)) {
        throw ValidationError("miter limit must exceed 1");
    }
    const float chans[4] = {style.color.r, style.color.g, style.color.b, style.color.a};
    for (float c : chans) {
        if (!(c >= 0.0f && c <= 1.0f)) {
            throw ValidationError("color channels must be in [0, 1]");
        }
    }
    if (style.join_method.kind == JoinMethodKind::kFan) {
        const double step = style.join_method.fan_step;
        if (!(step > 0.0 && step <= M_PI / 2.0)) {
            throw ValidationError("fan step must be in (0, pi/2]");
        }
    }
}

int proposed_subdivision_count(double turn_angle, double miter_limit) {
    int k = 1;
    while (k < 64 && std::tan(turn_angle / (2.0 * k)) > miter_limit) {
        ++k;
    }
    return k;
}

int fan_triangle_count(double turn_angle, double step_angle) {
    // Guard against ratios like (pi/2)/(pi/18) landing a few ulps above
    // the exact integer.
    const int k = static_cast<int>(std::ceil(turn_angle / step_angle - 1e-9));
    return std::max(k, 1);
}

TriangleBatch tessellate_segment(Vec2 p0, Vec2 p1, const StrokeStyle& style) {
    validate_style(style);
    if (distance(p0, p1) <= kVertexEps) {
        throw GeometryError("tessellate_segment: degenerate segment");
    }
    const Vec2 dir = unit(p1 - p0);
    const double half = style.width * 0.5;

    BodyEnd start{offset_point(p0, dir, Side::kLeft, half),
                  offset_point(p0, dir, Side::kRight, half),
                  std::nullopt, 1.0, 1.0, false};
    BodyEnd end{offset_point(p1, dir, Side::kRight, half),
                offset_point(p1, dir, Side::kLeft, half),
                std::nullopt, 1.0, 1.0, false};
    // For untrimmed ends the builder expects outer=left/inner=right at the
    // start and outer=right/inner=left at the end.
    return triangulate_body(start, end);
}

TriangleBatch tessellate_join_proposed(const JoinGeometry& join, const StrokeStyle& style) {
    const double half = style.width * 0.5;
    const double theta = join.turn_angle;
    const int k = proposed_subdivision_count(theta, style.miter_limit);
    const double wedge = theta / k;
    const double half_wedge = wedge * 0.5;
    const double t = std::tan(half_wedge);
    const double tip_scale = half / std::cos(half_wedge);
    const double sgn = join.sweep_sign();
    const Vec2 n0 = join.normal_in();

    std::vector<Vec2> rim(static_cast<std::size_t>(k) + 1);
    rim.front() = join.b_in;
    rim.back() = join.b_out;
    for (int i = 1; i < k; ++i) {
        rim[static_cast<std::size_t>(i)] = join.pivot + rotate(n0, sgn * i * wedge) * half;
    }

    TriangleBatch batch;
    batch.label = BatchLabel::kJoinProposed;
    batch.vertices.reserve(static_cast<std::size_t>(k) * 6);
    const AAVertex pivot{join.pivot, {0.0, 0.0}};
    for (int i = 0; i < k; ++i) {
        const Vec2 tip = k == 1 ? join.miter_tip
                                : join.pivot + rotate(n0, sgn * (i + 0.5) * wedge) * tip_scale;
        const AAVertex tip_v{tip, {t, 1.0}};
        push_triangle(batch, pivot, {rim[static_cast<std::size_t>(i)], {0.0, 1.0}}, tip_v);
        push_triangle(batch, pivot, tip_v, {rim[static_cast<std::size_t>(i) + 1], {0.0, 1.0}});
    }
    return batch;
}

TriangleBatch tessellate_join_fan(const JoinGeometry& join, const StrokeStyle& style,
                                  double step_angle) {
    if (!(step_angle > 0.0 && step_angle <= M_PI / 2.0)) {
        throw ValidationError("fan step must be in (0, pi/2]");
    }
    const double half = style.width * 0.5;
    const double theta = join.turn_angle;
    const int k = fan_triangle_count(theta, step_angle);
    const double wedge = theta / k;
    const double sgn = join.sweep_sign();
    const Vec2 n0 = join.normal_in();

    std::vector<Vec2> rim(static_cast<std::size_t>(k) + 1);
    rim.front() = join.b_in;
    rim.back() = join.b_out;
    for (int i = 1; i < k; ++i) {
        rim[static_cast<std::size_t>(i)] = join.pivot + rotate(n0, sgn * i * wedge) * half;
    }

    TriangleBatch batch;
    batch.label = BatchLabel::kJoinFan;
    batch.vertices.reserve(static_cast<std::size_t>(k) * 3);
    const AAVertex pivot{join.pivot, {0.0, 0.0}};
    for (int i = 0; i < k; ++i) {
        push_triangle(batch, pivot, {rim[static_cast<std::size_t>(i)], {0.0, 1.0}},
                      {rim[static_cast<std::size_t>(i) + 1], {0.0, 1.0}});
    }
    return batch;
}

std::vector<TriangleBatch> tessellate_polyline(const Polyline& line, const StrokeStyle& style) {
    validate_polyline(line);
    validate_style(style);

    const std::vector<Vec2>& v = line.vertices;
    const std::size_t seg_count = v.size() - 1;
    const double half = style.width * 0.5;

    std::vector<Vec2> dirs(seg_count);
    std::vector<double> lens(seg_count);
    for (std::size_t s = 0; s < seg_count; ++s) {
        lens[s] = distance(v[s], v[s + 1]);
        dirs[s] = (v[s + 1] - v[s]) / lens[s];
    }

    // Join j sits at interior vertex j+1, between segments j and j+1.
    const std::size_t join_count = seg_count - 1;
    std::vector<JoinSlot> joins(join_count);
    std::vector<double> desired(join_count, 0.0);
    for (std::size_t j = 0; j < join_count; ++j) {
        const double theta = std::abs(signed_turn_angle(dirs[j], dirs[j + 1]));
        if (theta < kCollinearEps || theta > M_PI - kReversalEps) {
            continue; // collinear: quads meet edge-to-edge; reversal: no join
        }
        joins[j].geometry = make_join(v[j], v[j + 1], v[j + 2], style.width);
        desired[j] = half * std::tan(theta * 0.5);
    }

    // Resolve inner pullbacks. A segment with joins at both ends may not
    // have room for both; scale them down, then each join takes the min
    // of what its two segments allow.
    std::vector<double> allowed_start(seg_count, 0.0), allowed_end(seg_count, 0.0);
    for (std::size_t s = 0; s < seg_count; ++s) {
        const double want_start = (s > 0 && joins[s - 1].geometry) ? desired[s - 1] : 0.0;
        const double want_end = (s < join_count && joins[s].geometry) ? desired[s] : 0.0;
        double fs = 1.0;
        if (want_start + want_end > lens[s]) {
            fs = lens[s] / (want_start + want_end);
        }
        allowed_start[s] = want_start * fs;
        allowed_end[s] = want_end * fs;
    }

    for (std::size_t j = 0; j < join_count; ++j) {
        if (!joins[j].geometry) {
            continue;
        }
        const JoinGeometry& g = *joins[j].geometry;
        const double p = std::min(allowed_end[j], allowed_start[j + 1]);
        const Side inner = opposite(g.side);
        const double phi = g.turn_angle * 0.5;
        const Vec2 bis = unit(perp(dirs[j], inner) + perp(dirs[j + 1], inner));

        InnerTrim trim;
        trim.inner = inner;
        trim.clamped = p < desired[j];
        if (!trim.clamped) {
            trim.v = g.pivot + bis * (half / std::cos(phi));
            trim.q_in = trim.v;
            trim.q_out = trim.v;
            trim.attr_y_v = 1.0;
        } else {
            trim.v = g.pivot + bis * (p / std::sin(phi));
            trim.q_in = offset_point(g.pivot - dirs[j] * p, dirs[j], inner, half);
            trim.q_out = offset_point(g.pivot + dirs[j + 1] * p, dirs[j + 1], inner, half);
            trim.attr_y_v = (p / std::tan(phi)) / half;
        }
        joins[j].trim = trim;
    }

    std::vector<TriangleBatch> batches;
    batches.reserve(seg_count + join_count);

    for (std::size_t s = 0; s < seg_count; ++s) {
        const Vec2 d = dirs[s];

        BodyEnd start;
        if (s > 0 && joins[s - 1].trim) {
            const InnerTrim& tr = *joins[s - 1].trim;
            start.inner_is_left = tr.inner == Side::kLeft;
            start.outer = offset_point(v[s], d, opposite(tr.inner), half);
            start.inner = tr.q_out;
            start.v = tr.v;
            start.v_attr_y_abs = tr.attr_y_v;
        } else {
            start.outer = offset_point(v[s], d, Side::kLeft, half);
            start.inner = offset_point(v[s], d, Side::kRight, half);
        }

        BodyEnd end;
        if (s < join_count && joins[s].trim) {
            const InnerTrim& tr = *joins[s].trim;
            end.inner_is_left = tr.inner == Side::kLeft;
            end.outer = offset_point(v[s + 1], d, opposite(tr.inner), half);
            end.inner = tr.q_in;
            end.v = tr.v;
            end.v_attr_y_abs = tr.attr_y_v;
        } else {
            end.outer = offset_point(v[s + 1], d, Side::kRight, half);
            end.inner = offset_point(v[s + 1], d, Side::kLeft, half);
        }

        batches.push_back(triangulate_body(start, end));

        if (s < join_count && joins[s].geometry) {
            const JoinGeometry& g = *joins[s].geometry;
            if (style.join_method.kind == JoinMethodKind::kProposed) {
                batches.push_back(tessellate_join_proposed(g, style));
            } else {
                batches.push_back(tessellate_join_fan(g, style, style.join_method.fan_step));
            }
        }
    }
    return batches;
}

} // namespace arcjoin

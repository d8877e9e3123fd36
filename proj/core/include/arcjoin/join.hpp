#pragma once

#include <optional>

#include "arcjoin/vec2.hpp"

namespace arcjoin {

// Joins flatter than this are skipped entirely; sub-microradian wedges
// contribute no visible pixels and destabilize the miter intersection.
constexpr double kCollinearEps = 1e-6;

// Beyond pi - kReversalEps the miter tip diverges; make_join refuses and
// the caller decides (tessellate_polyline skips such vertices).
constexpr double kReversalEps = 1e-6;

// The outer-side construction at one interior vertex of a stroked
// polyline. `side` is the outer side of the turn; the offset endpoints
// b_in/b_out sit at half-width from the pivot on the perpendiculars of
// the adjoining segments, and miter_tip is the intersection of the two
// outer offset edge lines.
struct JoinGeometry {
    Vec2 pivot;
    Vec2 b_in;
    Vec2 b_out;
    Vec2 miter_tip;
    double turn_angle = 0.0; // magnitude of the exterior turn, in (0, pi)
    Side side = Side::kLeft; // outer side of the turn

    double half_width() const { return distance(b_in, pivot); }
    // Outer unit normals of the incoming/outgoing segments.
    Vec2 normal_in() const { return (b_in - pivot) / half_width(); }
    Vec2 normal_out() const { return (b_out - pivot) / half_width(); }
    // Sign of the rotation that sweeps normal_in onto normal_out.
    double sweep_sign() const { return side == Side::kRight ? +1.0 : -1.0; }
};

// Builds the outer join at `pivot` between segments prev->pivot and
// pivot->next. Returns nullopt for collinear (no-join) vertices; throws
// GeometryError on near-reversal turns and degenerate inputs.
std::optional<JoinGeometry> make_join(Vec2 prev, Vec2 pivot, Vec2 next, double width);

} // namespace arcjoin

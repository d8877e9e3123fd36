#pragma once

#include <vector>

#include "arcjoin/join.hpp"
#include "arcjoin/polyline.hpp"
#include "arcjoin/stroke.hpp"

namespace arcjoin {

// Rectangle of width style.width centered on p0->p1, split along the
// fixed diagonal (p0-left, p0-right, p1-right) / (p0-left, p1-right,
// p1-left). Left-side vertices carry attr (0,+1), right-side (0,-1).
TriangleBatch tessellate_segment(Vec2 p0, Vec2 p1, const StrokeStyle& style);

// The two-triangle join: (pivot, b_in, tip) and (pivot, tip, b_out) with
// attrs (0,0)/(0,1)/(t,1) per triangle, t = tan(wedge half-angle). Wedges
// with t above style.miter_limit are bisected into the smallest number of
// equal sub-wedges that brings t back under the limit; each sub-wedge
// emits the same two triangles around its own tip.
TriangleBatch tessellate_join_proposed(const JoinGeometry& join, const StrokeStyle& style);

// Baseline fan: ceil(turn_angle / step_angle) pivot-centered triangles
// with rim vertices on the half-width circle and flat chords between
// them. Rim attrs are (0,1), so the silhouette is the chord, not the arc.
TriangleBatch tessellate_join_fan(const JoinGeometry& join, const StrokeStyle& style,
                                  double step_angle);

// One SegmentBody batch per segment plus one join batch per interior
// vertex with a non-degenerate join. Bodies at a join end stop at the
// pivot's perpendicular on the outer side and are pulled back to the
// shared inner-miter vertex on the inner side, so batch interiors are
// pairwise disjoint; the sliver between the two pullback chords is left
// unfilled. Near-reversal vertices (turn > pi - 1e-6) get no join.
std::vector<TriangleBatch> tessellate_polyline(const Polyline& line, const StrokeStyle& style);

// Fan triangle count for a wedge; exposed for accounting and tests.
int fan_triangle_count(double turn_angle, double step_angle);

// Number of equal sub-wedges the proposed join uses for a turn.
int proposed_subdivision_count(double turn_angle, double miter_limit);

} // namespace arcjoin

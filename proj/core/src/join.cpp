#include "arcjoin/join.hpp"

#include <cmath>

#include "arcjoin/errors.hpp"

namespace arcjoin {

std::optional<JoinGeometry> make_join(Vec2 prev, Vec2 pivot, Vec2 next, double width) {
    if (!(width > 0.0)) {
        throw GeometryError("make_join: width must be positive");
    }
    const Vec2 dir_in = unit(pivot - prev);
    const Vec2 dir_out = unit(next - pivot);

    const double theta = signed_turn_angle(dir_in, dir_out);
    const double mag = std::abs(theta);
    if (mag < kCollinearEps) {
        return std::nullopt;
    }
    if (mag > M_PI - kReversalEps) {
        throw GeometryError("make_join: near-reversal turn, miter tip diverges");
    }

    // Outer side of a left turn is the right side of travel.
    const Side side = theta > 0.0 ? Side::kRight : Side::kLeft;
    const double half = width * 0.5;

    const Vec2 n_in = perp(dir_in, side);
    const Vec2 n_out = perp(dir_out, side);

    JoinGeometry join;
    join.pivot = pivot;
    join.b_in = pivot + n_in * half;
    join.b_out = pivot + n_out * half;
    // The outer offset lines meet on the bisector at half/cos(theta/2)
    // from the pivot.
    join.miter_tip = pivot + unit(n_in + n_out) * (half / std::cos(mag * 0.5));
    join.turn_angle = mag;
    join.side = side;
    return join;
}

} // namespace arcjoin

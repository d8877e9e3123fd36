#pragma once

#include <vector>

#include "arcjoin/vec2.hpp"

namespace arcjoin {

// Minimum spacing between consecutive vertices.
constexpr double kVertexEps = 1e-9;

// An open centerline to be stroked. Valid polylines have at least two
// vertices, all finite, no two consecutive ones closer than kVertexEps.
struct Polyline {
    std::vector<Vec2> vertices;
};

inline void validate_polyline(const Polyline& line) {
    if (line.vertices.size() < 2) {
        throw ValidationError("polyline needs at least 2 vertices");
    }
    for (std::size_t i = 0; i < line.vertices.size(); ++i) {
        if (!line.vertices[i].is_finite()) {
            throw ValidationError("polyline vertex is not finite");
        }
        if (i > 0 && distance(line.vertices[i - 1], line.vertices[i]) <= kVertexEps) {
            throw ValidationError("consecutive polyline vertices coincide");
        }
    }
}

} // namespace arcjoin

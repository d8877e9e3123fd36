#pragma once

#include <cstdint>

#include "arcjoin/scene.hpp"

namespace arcjoin {

// Synthetic road-network generator. Roads are jittered-grid walks:
// road i starts on grid slot i (alternating horizontal/vertical) and
// advances by steps of grid_spacing * [0.7, 1.3), turning by a random
// angle in (5, 175) degrees at each interior vertex. A turn is accepted
// only if the new segment keeps min_separation from all non-adjacent
// segments of the same road, so a single stroke never self-overlaps;
// a road that cannot continue is truncated.
//
// Bounds: each road has between 2 and 2 + round(10 * density) vertices.
// Output is a pure function of (seed, n_roads, density).
struct NetworkParams {
    double grid_spacing = 120.0;
    double min_separation = 40.0;
};

Scene gen_network(std::uint64_t seed, int n_roads, double density,
                  const NetworkParams& params = {});

// Upper bound on vertices per road for the given density.
int max_road_vertices(double density);

} // namespace arcjoin

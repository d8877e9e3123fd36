#include "arcjoin/network.hpp"

#include <algorithm>
#include <cmath>

#include "arcjoin/errors.hpp"

namespace arcjoin {

namespace {

// splitmix64: tiny, reproducible across platforms, good enough for
// scene jitter. std::uniform_real_distribution is implementation
// defined and would break cross-toolchain determinism.
struct DetRng {
    std::uint64_t state;

    explicit DetRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    double next_sign() { return (next_u64() & 1) ? 1.0 : -1.0; }
};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 <= 0.0) {
        return distance(p, a);
    }
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return d1 * d2 < 0.0 && d3 * d4 < 0.0;
}

double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    if (segments_intersect(a, b, c, d)) {
        return 0.0;
    }
    return std::min(std::min(point_segment_distance(a, c, d), point_segment_distance(b, c, d)),
                    std::min(point_segment_distance(c, a, b), point_segment_distance(d, a, b)));
}

} // namespace

int max_road_vertices(double density) {
    return 2 + static_cast<int>(std::lround(10.0 * density));
}

Scene gen_network(std::uint64_t seed, int n_roads, double density, const NetworkParams& params) {
    if (n_roads < 1) {
        throw ValidationError("gen_network: n_roads must be >= 1");
    }
    if (!(density > 0.0 && density <= 1.0)) {
        throw ValidationError("gen_network: density must be in (0, 1]");
    }

    DetRng rng(seed * 0x5851F42D4C957F2Dull + 0x14057B7EF767814Full);
    const double g = params.grid_spacing;
    const int interior_target = static_cast<int>(std::lround(10.0 * density));

    std::vector<Polyline> roads;
    roads.reserve(static_cast<std::size_t>(n_roads));

    for (int road = 0; road < n_roads; ++road) {
        const bool horizontal = (road % 2) == 0;
        const double slot = static_cast<double>(road / 2) * g;
        const double jitter_a = rng.uniform(-0.3, 0.3) * g;
        const double jitter_b = rng.uniform(-0.3, 0.3) * g;

        Vec2 pos = horizontal ? Vec2{jitter_a, slot + jitter_b} : Vec2{slot + jitter_a, jitter_b};
        Vec2 dir = horizontal ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};

        Polyline line;
        line.vertices.push_back(pos);
        std::vector<std::pair<Vec2, Vec2>> segments;

        const int segment_target = 1 + interior_target;
        for (int s = 0; s < segment_target; ++s) {
            const double len = g * rng.uniform(0.7, 1.3);
            Vec2 step_dir = dir;
            bool ok = true;
            if (s > 0) {
                ok = false;
                for (int attempt = 0; attempt < 40 && !ok; ++attempt) {
                    const double turn = rng.uniform(5.0, 175.0) * (M_PI / 180.0) * rng.next_sign();
                    const Vec2 cand = rotate(dir, turn);
                    const Vec2 end = pos + cand * len;
                    ok = true;
                    // Keep clear of every non-adjacent segment so the
                    // stroke cannot cross or rub against itself.
                    for (std::size_t k = 0; k + 1 < segments.size() && ok; ++k) {
                        if (segment_segment_distance(pos, end, segments[k].first,
                                                     segments[k].second) <
                            params.min_separation) {
                            ok = false;
                        }
                    }
                    if (ok) {
                        step_dir = cand;
                    }
                }
            }
            if (!ok) {
                break; // truncate the road; it already has >= 2 vertices
            }
            const Vec2 end = pos + step_dir * len;
            segments.emplace_back(pos, end);
            line.vertices.push_back(end);
            pos = end;
            dir = step_dir;
        }
        roads.push_back(std::move(line));
    }
    return make_scene(std::move(roads));
}

} // namespace arcjoin

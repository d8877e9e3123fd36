#pragma once

#include <cstdint>
#include <vector>

#include "arcjoin/errors.hpp"
#include "arcjoin/vec2.hpp"

namespace arcjoin {

struct Rgba {
    float r = 0.0f;
    float g = 0.0f;
    float b = 0.0f;
    float a = 1.0f;

    constexpr bool operator==(const Rgba&) const = default;
};

enum class JoinMethodKind {
    kProposed, // two-triangle wedge with radial anti-aliasing attributes
    kFan,      // pivot-centered triangle fan with flat chords (baseline)
};

struct JoinMethod {
    JoinMethodKind kind = JoinMethodKind::kProposed;
    double fan_step = 10.0 * M_PI / 180.0; // radians per fan triangle

    static JoinMethod proposed() { return {JoinMethodKind::kProposed, 0.0}; }
    static JoinMethod fan(double step_radians) { return {JoinMethodKind::kFan, step_radians}; }
};

struct StrokeStyle {
    double width = 1.0;          // W, pixels
    Rgba color = {0, 0, 0, 1};
    double aa_threshold = 0.0;   // N in [0, 1): start of the feather band
    JoinMethod join_method = JoinMethod::proposed();
    double miter_limit = 2.0;    // bound on tan(half-wedge) before subdivision
};

// N for a constant one-pixel feather band: (1 - N) * W/2 = 1.
inline double default_aa_threshold(double width) {
    const double n = 1.0 - 2.0 / width;
    return n > 0.0 ? n : 0.0;
}

void validate_style(const StrokeStyle& style);

// Screen-space vertex with the dimensionless 2-D anti-aliasing attribute.
// |attr| is the normalized distance d used by the fragment alpha rule.
struct AAVertex {
    Vec2 position;
    Vec2 attr;
};

enum class BatchLabel : std::uint8_t { kSegmentBody, kJoinProposed, kJoinFan };

enum class AccountingMode { kPerFeature, kBatched };

// Consecutive vertex triples form triangles.
struct TriangleBatch {
    std::vector<AAVertex> vertices;
    BatchLabel label = BatchLabel::kSegmentBody;

    std::size_t triangle_count() const { return vertices.size() / 3; }
};

} // namespace arcjoin

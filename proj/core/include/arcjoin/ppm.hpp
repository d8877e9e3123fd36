#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arcjoin/raster.hpp"

namespace arcjoin {

// Binary PPM (P6, 8 bits per channel, round(c*255) with clamp). The
// alpha channel is dropped; PPM has no alpha plane.
std::vector<std::uint8_t> encode_ppm(const Framebuffer& fb);

void write_ppm(const Framebuffer& fb, const std::string& path);

} // namespace arcjoin

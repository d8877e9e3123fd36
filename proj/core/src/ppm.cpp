#include "arcjoin/ppm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "arcjoin/errors.hpp"

namespace arcjoin {

namespace {

std::uint8_t to_byte(float c) {
    const float clamped = std::clamp(c, 0.0f, 1.0f);
    return static_cast<std::uint8_t>(std::lround(clamped * 255.0f));
}

} // namespace

std::vector<std::uint8_t> encode_ppm(const Framebuffer& fb) {
    char header[64];
    const int header_len = std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n", fb.width,
                                         fb.height);
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(header_len) + fb.pixels.size() * 3);
    out.insert(out.end(), header, header + header_len);
    for (const Rgba& px : fb.pixels) {
        out.push_back(to_byte(px.r));
        out.push_back(to_byte(px.g));
        out.push_back(to_byte(px.b));
    }
    return out;
}

void write_ppm(const Framebuffer& fb, const std::string& path) {
    const std::vector<std::uint8_t> bytes = encode_ppm(fb);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open for writing: " + path);
    }
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!file) {
        throw IoError("write failed: " + path);
    }
}

} // namespace arcjoin

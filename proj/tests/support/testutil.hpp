#pragma once

// Shared helpers for the test binaries: deterministic random images,
// procedural textured scenes, and access to the checked-in data files.

#include <cmath>
#include <random>
#include <string>

#include "focusfuse/image.hpp"
#include "focusfuse/image_io.hpp"

namespace testutil {

inline ff::GrayImage random_image(int w, int h, uint64_t seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937_64 gen(seed);
    ff::GrayImage img(w, h);
    for (double& v : img.data) {
        // top-53-bit mapping keeps the stream identical everywhere
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        v = lo + (hi - lo) * u;
    }
    return img;
}

// Textured synthetic scene: smooth luminance + edges + multi-frequency
// texture everywhere. Designed so focus decisions have signal at every pixel.
inline ff::GrayImage textured_scene(int w, int h, uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto u = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    const double fx1 = 0.25 + 0.2 * u(), fy1 = 0.25 + 0.2 * u();
    const double fx2 = 0.75 + 0.5 * u(), fy2 = 0.75 + 0.5 * u();
    const double cx = w * (0.3 + 0.4 * u()), cy = h * (0.3 + 0.4 * u());
    const double phase = 6.28 * u();

    ff::GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double v = 0.45 + 0.25 * std::sin(0.013 * (x + 2.0 * y) + phase);
            v += 0.12 * std::sin(fx1 * x + phase) * std::sin(fy1 * y);
            v += 0.08 * std::sin(fx2 * x) * std::cos(fy2 * y + phase);
            const double r = std::hypot(x - cx, y - cy);
            if (r < 0.22 * std::min(w, h)) v += 0.18;  // one hard-edged disc
            img.at(x, y) = v;
        }
    for (double& v : img.data) {
        v += 0.03 * (u() - 0.5);
        v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    }
    return img;
}

// Pixels whose Chebyshev-radius neighborhood agrees with the mask value at
// the pixel, i.e. at least `radius` away from any mask boundary.
inline ff::BinaryMask mask_interior(const ff::BinaryMask& m, int radius) {
    ff::BinaryMask out(m.width, m.height);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) {
            const uint8_t v = m.at(x, y);
            bool uniform = true;
            for (int dy = -radius; dy <= radius && uniform; ++dy)
                for (int dx = -radius; dx <= radius; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= m.width || ny >= m.height) continue;
                    if (m.at(nx, ny) != v) {
                        uniform = false;
                        break;
                    }
                }
            out.at(x, y) = uniform ? 1 : 0;
        }
    return out;
}

inline std::string data_path(const std::string& name) {
    return std::string(FOCUSFUSE_TEST_DATA_DIR) + "/" + name;
}

inline ff::GrayImage load_scene(const std::string& name) {
    return ff::load_image(data_path(name));
}

}  // namespace testutil

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ff {

/// 2-D grid of double-precision intensities, row-major.
///
/// Nominal range is [0,1] for loaded/saved images, but intermediate
/// pipeline layers (texture residuals in particular) are signed and may
/// leave that range. Values are only clamped when an image is written out.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // data[y * width + x]

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<size_t>(w) * static_cast<size_t>(h), fill) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("GrayImage: dimensions must be positive");
    }

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    /// Pixel access with symmetric (mirror) extension, e.g. x = -1 reads x = 0.
    double at_mirror(int x, int y) const;

    size_t pixel_count() const { return data.size(); }
    bool empty() const { return data.empty(); }
    bool same_size(const GrayImage& o) const { return width == o.width && height == o.height; }
    bool all_finite() const;
};

/// 2-D boolean grid with the same layout as GrayImage.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;  // 0 or 1

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false)
        : width(w), height(h), data(static_cast<size_t>(w) * static_cast<size_t>(h), fill ? 1 : 0) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("BinaryMask: dimensions must be positive");
    }

    uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    size_t pixel_count() const { return data.size(); }
    bool same_size(const BinaryMask& o) const { return width == o.width && height == o.height; }

    BinaryMask complement() const;
    size_t count_ones() const;
};

/// Planar RGB container used by the color-carrying fusion entry points.
struct RgbImage {
    GrayImage r, g, b;

    bool valid() const { return !r.empty() && r.same_size(g) && r.same_size(b); }
    int width() const { return r.width; }
    int height() const { return r.height; }

    /// Rec. 601 luma: 0.299 R + 0.587 G + 0.114 B.
    GrayImage luminance() const;
};

/// Index folded into [0, n) by symmetric (mirror) reflection: ...cba|abc...|cba...
int mirror_index(int i, int n);

// Elementwise helpers. Sizes must match; violations throw std::invalid_argument.
GrayImage add(const GrayImage& a, const GrayImage& b);
GrayImage subtract(const GrayImage& a, const GrayImage& b);
GrayImage multiply(const GrayImage& a, const GrayImage& b);
GrayImage add_scalar(const GrayImage& a, double c);
GrayImage scale(const GrayImage& a, double c);
GrayImage clamp01(const GrayImage& a);
double mean(const GrayImage& a);
double mean_abs(const GrayImage& a);

/// Pixelwise select: a where mask is set, b elsewhere.
GrayImage select(const GrayImage& a, const GrayImage& b, const BinaryMask& mask);

void require_same_size(const GrayImage& a, const GrayImage& b, const std::string& where);

}  // namespace ff

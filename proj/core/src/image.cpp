#include "focusfuse/image.hpp"

#include <cmath>
#include <cstdlib>

namespace ff {

int mirror_index(int i, int n) {
    if (n == 1) return 0;
    // period of the reflected sequence is 2n; fold, then reflect the top half
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

double GrayImage::at_mirror(int x, int y) const {
    return at(mirror_index(x, width), mirror_index(y, height));
}

bool GrayImage::all_finite() const {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

BinaryMask BinaryMask::complement() const {
    BinaryMask out(width, height);
    for (size_t i = 0; i < data.size(); ++i) out.data[i] = data[i] ? 0 : 1;
    return out;
}

size_t BinaryMask::count_ones() const {
    size_t n = 0;
    for (uint8_t v : data) n += v ? 1 : 0;
    return n;
}

GrayImage RgbImage::luminance() const {
    if (!valid()) throw std::invalid_argument("RgbImage::luminance: planes empty or size mismatch");
    GrayImage y(r.width, r.height);
    for (size_t i = 0; i < y.data.size(); ++i)
        y.data[i] = 0.299 * r.data[i] + 0.587 * g.data[i] + 0.114 * b.data[i];
    return y;
}

void require_same_size(const GrayImage& a, const GrayImage& b, const std::string& where) {
    if (!a.same_size(b))
        throw std::invalid_argument(where + ": image size mismatch: " + std::to_string(a.width) +
                                    "x" + std::to_string(a.height) + " vs " +
                                    std::to_string(b.width) + "x" + std::to_string(b.height));
}

GrayImage add(const GrayImage& a, const GrayImage& b) {
    require_same_size(a, b, "add");
    GrayImage out(a.width, a.height);
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] = a.data[i] + b.data[i];
    return out;
}

GrayImage subtract(const GrayImage& a, const GrayImage& b) {
    require_same_size(a, b, "subtract");
    GrayImage out(a.width, a.height);
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
    return out;
}

GrayImage multiply(const GrayImage& a, const GrayImage& b) {
    require_same_size(a, b, "multiply");
    GrayImage out(a.width, a.height);
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] = a.data[i] * b.data[i];
    return out;
}

GrayImage add_scalar(const GrayImage& a, double c) {
    GrayImage out = a;
    for (double& v : out.data) v += c;
    return out;
}

GrayImage scale(const GrayImage& a, double c) {
    GrayImage out = a;
    for (double& v : out.data) v *= c;
    return out;
}

GrayImage clamp01(const GrayImage& a) {
    GrayImage out = a;
    for (double& v : out.data) v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    return out;
}

double mean(const GrayImage& a) {
    if (a.empty()) throw std::invalid_argument("mean: empty image");
    double s = 0.0;
    for (double v : a.data) s += v;
    return s / static_cast<double>(a.data.size());
}

double mean_abs(const GrayImage& a) {
    if (a.empty()) throw std::invalid_argument("mean_abs: empty image");
    double s = 0.0;
    for (double v : a.data) s += std::fabs(v);
    return s / static_cast<double>(a.data.size());
}

GrayImage select(const GrayImage& a, const GrayImage& b, const BinaryMask& mask) {
    require_same_size(a, b, "select");
    if (mask.width != a.width || mask.height != a.height)
        throw std::invalid_argument("select: mask size mismatch");
    GrayImage out(a.width, a.height);
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = mask.data[i] ? a.data[i] : b.data[i];
    return out;
}

}  // namespace ff

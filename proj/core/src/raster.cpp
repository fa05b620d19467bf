#include "focusfuse/raster.hpp"

#include <array>
#include <cmath>

namespace ff {

namespace {

constexpr std::array<double, 5> kBinomial = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

void check_valid(const GrayImage& img, const char* where) {
    if (img.empty() || img.width <= 0 || img.height <= 0)
        throw std::invalid_argument(std::string(where) + ": empty image");
}

// 1-D pass of a symmetric-padded correlation along x with arbitrary taps.
GrayImage pass_x(const GrayImage& img, const std::vector<double>& taps, int anchor) {
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double s = 0.0;
            for (size_t k = 0; k < taps.size(); ++k)
                s += taps[k] * img.at(mirror_index(x + static_cast<int>(k) - anchor, img.width), y);
            out.at(x, y) = s;
        }
    return out;
}

GrayImage pass_y(const GrayImage& img, const std::vector<double>& taps, int anchor) {
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double s = 0.0;
            for (size_t k = 0; k < taps.size(); ++k)
                s += taps[k] * img.at(x, mirror_index(y + static_cast<int>(k) - anchor, img.height));
            out.at(x, y) = s;
        }
    return out;
}

}  // namespace

Kernel::Kernel(int w, int h, std::vector<double> t) : width(w), height(h), taps(std::move(t)) {
    if (w <= 0 || h <= 0 || taps.empty()) throw std::invalid_argument("Kernel: empty kernel");
    if (taps.size() != static_cast<size_t>(w) * h)
        throw std::invalid_argument("Kernel: tap count does not match dimensions");
    const bool odd = (w % 2 == 1) && (h % 2 == 1);
    const bool diff = (w == 2 && h == 1) || (w == 1 && h == 2);
    if (!odd && !diff)
        throw std::invalid_argument("Kernel: dimensions must be odd or a 1x2/2x1 difference");
}

GrayImage convolve2d(const GrayImage& img, const Kernel& kernel) {
    check_valid(img, "convolve2d");
    if (kernel.taps.empty()) throw std::invalid_argument("convolve2d: empty kernel");
    const int ax = (kernel.width - 1) / 2;
    const int ay = (kernel.height - 1) / 2;
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double s = 0.0;
            for (int ky = 0; ky < kernel.height; ++ky)
                for (int kx = 0; kx < kernel.width; ++kx)
                    s += kernel.at(kx, ky) * img.at_mirror(x + kx - ax, y + ky - ay);
            out.at(x, y) = s;
        }
    return out;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
    check_valid(img, "gaussian_blur");
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_blur: sigma must be positive");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        taps[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += taps[i + radius];
    }
    for (double& t : taps) t /= sum;
    return pass_y(pass_x(img, taps, radius), taps, radius);
}

double entropy(const GrayImage& img) {
    check_valid(img, "entropy");
    std::array<size_t, 256> hist{};
    for (double v : img.data) {
        v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        int bin = static_cast<int>(v * 256.0);
        if (bin > 255) bin = 255;
        ++hist[bin];
    }
    const double n = static_cast<double>(img.pixel_count());
    double e = 0.0;
    for (size_t c : hist)
        if (c > 0) {
            const double p = c / n;
            e -= p * std::log2(p);
        }
    return e;
}

GrayImage downsample2(const GrayImage& img) {
    check_valid(img, "downsample2");
    const std::vector<double> taps(kBinomial.begin(), kBinomial.end());
    GrayImage blurred = pass_y(pass_x(img, taps, 2), taps, 2);
    const int ow = (img.width + 1) / 2;
    const int oh = (img.height + 1) / 2;
    GrayImage out(ow, oh);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) out.at(x, y) = blurred.at(2 * x, 2 * y);
    return out;
}

namespace {

// One axis of the zero-insert + doubled-binomial upsampling. Writing the
// result sample-by-sample keeps the mirror in source index space:
//   even x = 2i:  (s[i-1] + 6 s[i] + s[i+1]) / 8
//   odd  x = 2i+1: (4 s[i] + 4 s[i+1]) / 8
GrayImage up_pass_x(const GrayImage& img, int target_w) {
    GrayImage out(target_w, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < target_w; ++x) {
            const int i = x / 2;
            double v;
            if (x % 2 == 0)
                v = (img.at(mirror_index(i - 1, img.width), y) + 6.0 * img.at(i, y) +
                     img.at(mirror_index(i + 1, img.width), y)) / 8.0;
            else
                v = (4.0 * img.at(i, y) + 4.0 * img.at(mirror_index(i + 1, img.width), y)) / 8.0;
            out.at(x, y) = v;
        }
    return out;
}

GrayImage up_pass_y(const GrayImage& img, int target_h) {
    GrayImage out(img.width, target_h);
    for (int y = 0; y < target_h; ++y) {
        const int i = y / 2;
        for (int x = 0; x < img.width; ++x) {
            double v;
            if (y % 2 == 0)
                v = (img.at(x, mirror_index(i - 1, img.height)) + 6.0 * img.at(x, i) +
                     img.at(x, mirror_index(i + 1, img.height))) / 8.0;
            else
                v = (4.0 * img.at(x, i) + 4.0 * img.at(x, mirror_index(i + 1, img.height))) / 8.0;
            out.at(x, y) = v;
        }
    }
    return out;
}

}  // namespace

GrayImage upsample2(const GrayImage& img, int target_w, int target_h) {
    check_valid(img, "upsample2");
    if ((target_w + 1) / 2 != img.width || (target_h + 1) / 2 != img.height)
        throw std::invalid_argument(
            "upsample2: target dims inconsistent: " + std::to_string(target_w) + "x" +
            std::to_string(target_h) + " does not halve to " + std::to_string(img.width) + "x" +
            std::to_string(img.height));
    return up_pass_y(up_pass_x(img, target_w), target_h);
}

GrayImage box_mean(const GrayImage& img, int window) {
    check_valid(img, "box_mean");
    if (window < 1 || window % 2 == 0) throw std::invalid_argument("box_mean: window must be odd");
    const int r = window / 2;
    std::vector<double> taps(static_cast<size_t>(window), 1.0 / window);
    return pass_y(pass_x(img, taps, r), taps, r);
}

}  // namespace ff

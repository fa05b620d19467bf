#pragma once

#include "focusfuse/image.hpp"

namespace ff {

/// Small dense kernel, row-major. Dimensions must be odd, or 1x2 / 2x1 for
/// the discrete difference operators.
struct Kernel {
    int width = 0;
    int height = 0;
    std::vector<double> taps;

    Kernel() = default;
    Kernel(int w, int h, std::vector<double> t);
    double at(int x, int y) const { return taps[static_cast<size_t>(y) * width + x]; }
};

/// Correlate the image with the kernel as written (no flip), symmetric
/// (mirror) padding, output the same size as the input. Odd kernels are
/// anchored at their center; 1x2 / 2x1 kernels at their first tap.
GrayImage convolve2d(const GrayImage& img, const Kernel& kernel);

/// Separable Gaussian, kernel radius ceil(3*sigma), taps normalized to sum 1,
/// mirror padding.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

/// Shannon entropy (bits) of a 256-bin histogram over the clamped image.
/// Always in [0, 8]; empty bins contribute 0.
double entropy(const GrayImage& img);

/// Binomial 5-tap [1,4,6,4,1]/16 blur (separable, mirror) followed by
/// 2x decimation. Output size is ceil(n/2) per axis.
GrayImage downsample2(const GrayImage& img);

/// Inverse of downsample2's size contract: zero-insertion to target_w x
/// target_h followed by the same binomial kernel scaled x2 per axis. The
/// mirror extension acts on the source sample grid, so constants are
/// reproduced exactly up to the borders. Targets must satisfy
/// ceil(target/2) == current size per axis.
GrayImage upsample2(const GrayImage& img, int target_w, int target_h);

/// Mean over a window x window neighborhood (window odd), mirror padding.
GrayImage box_mean(const GrayImage& img, int window);

}  // namespace ff

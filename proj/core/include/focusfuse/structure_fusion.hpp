#pragma once

#include <array>

#include "focusfuse/image.hpp"

namespace ff {

/// Per-layer structure features: the directional frequency-variance score,
/// the entropy in bits, and the resulting normalized fusion weight.
struct StructureFeatures {
    double psi = 0.0;
    double entropy_e = 0.0;
    double weight = 0.0;
};

/// Orthonormal 2-D DCT-II of one 3x3 block (row-major in and out).
std::array<double, 9> dct3(const std::array<double, 9>& block);
std::array<double, 9> idct3(const std::array<double, 9>& coeffs);

/// Image-level frequency-variance feature: tile into non-overlapping
/// block x block DCT blocks (remainder discarded), group the AC coefficients
/// by direction (0/45/90/135 degrees), take the population standard deviation
/// per group, normalize the four values by their mean and average the
/// per-block variance of the normalized set over all blocks.
double freq_variance(const GrayImage& s, int block = 3);

/// Entropy x frequency-variance weighted sum of the structure layers.
/// Weights are (E_m psi_m) / K with K their sum; if K < 1e-12 every layer
/// gets weight 1/n.
GrayImage fuse_structure(const std::vector<GrayImage>& structures, int block = 3,
                         std::vector<StructureFeatures>* features = nullptr);

}  // namespace ff

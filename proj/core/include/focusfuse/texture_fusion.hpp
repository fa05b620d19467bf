#pragma once

#include "focusfuse/image.hpp"
#include "focusfuse/pyramid.hpp"

namespace ff {

/// Per-axis gradient responses (gm_x, gm_y), the multi-scale significance
/// map sm and the combined salient feature map tm = sm * |gm|.
struct SaliencyMaps {
    GrayImage gm_x, gm_y;
    GrayImage sm;
    GrayImage tm;
};

/// Raw focus decision map and its consistency-verified refinement.
struct DecisionMaps {
    BinaryMask map_raw;
    BinaryMask map_verified;
};

/// Gradient operator on a texture layer: per axis,
///   gm = r d - (2d + 0.01)^p   with r = p e^(p/2 - 1),
/// d the forward difference along x and the [1,-1]' difference along y
/// (mirror boundaries). The power base is clamped below at 1e-6 so the
/// fractional power stays real for strongly negative differences.
void grad_maps(const GrayImage& t, double p, GrayImage& gm_x, GrayImage& gm_y);

/// Per-pixel spatial frequency over an odd sliding window (mirror padding):
/// sqrt of the window means of squared horizontal and vertical differences.
GrayImage local_spatial_frequency(const GrayImage& img, int window);

/// Multi-scale significance map: for k = N-1 down to 1 accumulate
/// sqrt(localSF(G_k) + localSF(L_k)), upsampling the running sum through each
/// intervening scale back to full resolution. N = 1 yields an all-zero map
/// (the accumulation range is empty).
GrayImage significance_map(const PyramidStack& pyr, int window);

/// Full salient-feature extraction for one texture layer.
SaliencyMaps salient_feature_map(const GrayImage& t, int levels_n, int window, double p);

/// MAP(x,y) = tm1(x,y) > tm2(x,y); ties go to image 2.
BinaryMask focus_decision(const GrayImage& tm1, const GrayImage& tm2);

/// Consistency verification: flip connected components (8-connectivity,
/// either polarity) smaller than area_frac of the image, then apply majority
/// filters with windows 2^l + 1 for l = 1..levels.
BinaryMask consistency_verify(const BinaryMask& map_raw, int levels = 3, double area_frac = 0.01);

/// Pixelwise select t1 where omp is set, else t2.
GrayImage compose_focused_texture(const GrayImage& t1, const GrayImage& t2, const BinaryMask& omp);

/// Weighted texture fusion: per pixel tm4/(tm3+tm4) * t4 + tm3/(tm3+tm4) * t3,
/// falling back to equal weights where tm3 + tm4 < 1e-12.
GrayImage fuse_texture(const GrayImage& t4, const GrayImage& t3, const GrayImage& tm4,
                       const GrayImage& tm3);

}  // namespace ff

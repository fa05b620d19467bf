#pragma once

#include "focusfuse/image.hpp"

namespace ff {

/// Scores for one fused image against its two sources. All metrics operate
/// on the 0-255 intensity scale.
struct FusionReport {
    std::string id;
    double q_g = 0.0;
    double q_m = 0.0;
    double q_s = 0.0;
    double ag = 0.0;
    double sf = 0.0;
    double psnr = 0.0;
    double runtime_ms = 0.0;
};

/// Mean over the (H-1)x(W-1) interior of sqrt((dx^2 + dy^2)/2), forward
/// differences on the 0-255 scale.
double avg_gradient(const GrayImage& f);

/// Global spatial frequency sqrt(RF^2 + CF^2) with RF^2 the mean squared
/// horizontal first difference and CF^2 the vertical analog, 0-255 scale.
double spatial_frequency(const GrayImage& f);

/// Mean over sources of 10 log10(255^2 / MSE); each term is capped at 100 dB
/// (the value an exact match contributes).
double psnr_fusion(const GrayImage& fused, const std::vector<GrayImage>& sources);

/// Xydeas-Petrovic gradient-preservation metric Q^AB/F with the standard
/// sigmoid constants; Sobel strength/orientation, source-strength weighting.
double q_g(const GrayImage& fused, const GrayImage& a, const GrayImage& b);

/// Piella-Heijmans fusion quality index over sliding 8x8 windows: the
/// universal image quality index of the fused image against each source,
/// blended per window by relative source variance. Clamped to [0,1].
double q_s(const GrayImage& fused, const GrayImage& a, const GrayImage& b);

/// Multiscale edge-preservation score: two-level Haar decomposition (inputs
/// mirror-padded to a multiple of 4), per detail band a coefficient-magnitude
/// preservation sigmoid weighted by source magnitude, bands averaged, levels
/// combined 2/3 and 1/3.
double q_m(const GrayImage& fused, const GrayImage& a, const GrayImage& b);

/// All six metrics for one pair.
FusionReport evaluate_pair(const std::string& id, const GrayImage& fused, const GrayImage& a,
                           const GrayImage& b);

}  // namespace ff

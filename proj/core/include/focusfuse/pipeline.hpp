#pragma once

#include <optional>

#include "focusfuse/image.hpp"
#include "focusfuse/ssf.hpp"
#include "focusfuse/texture_fusion.hpp"

namespace ff {

enum class FusionMode {
    Tri,   // visible A + visible B + infrared
    Mmif,  // visible + infrared
    Mfif,  // visible A + visible B
};

enum class ChromaMode {
    GrayOnly,
    CarryFromVisible,
};

struct FusionConfig {
    FusionMode mode = FusionMode::Tri;
    SsfParams ssf;
    int pyr_levels = 3;
    int sf_window = 7;
    int cv_levels = 3;
    double cv_area_frac = 0.01;
    double grad_p = 0.8;
    int struct_block = 3;
    ChromaMode chroma = ChromaMode::CarryFromVisible;

    void validate() const;
    /// 3 for Tri, 2 otherwise.
    int input_arity() const { return mode == FusionMode::Tri ? 3 : 2; }
};

/// Everything the pipeline computes for one fusion, for debugging dumps and
/// the color-carrying path. Saliency/decision members are empty in modes
/// that do not produce them.
struct FusionResult {
    GrayImage fused;            // clamp(FT + FS, 0, 1)
    GrayImage fused_texture;    // FT, pre-clamp
    GrayImage fused_structure;  // FS, pre-clamp
    std::vector<GrayImage> structures;
    std::vector<GrayImage> textures;
    GrayImage sm1, sm2, tm1, tm2, tm3, tm4;
    BinaryMask map_raw, map_verified;
    GrayImage focused_texture;  // T4
};

/// Fuse per the configured mode:
///  - Tri: decompose all three inputs, focus-decide the visible textures,
///    verify, compose T4, weight T4 against the infrared texture, and add the
///    entropy/frequency-variance weighted structures.
///  - Mmif: identical to Tri with the visible input duplicated (the decision
///    map ties everywhere, so T4 is the visible texture).
///  - Mfif: texture path only between the two visible inputs; FT = T4 and the
///    structures are weighted pairwise.
/// The result is clamped to [0,1] at the very end.
FusionResult fuse_detailed(const std::vector<GrayImage>& inputs, const FusionConfig& cfg);

GrayImage fuse(const std::vector<GrayImage>& inputs, const FusionConfig& cfg);

/// Color-carrying fusion: luminances are fused per fuse(); chroma offsets are
/// taken from visible A where the verified decision map is set, else from
/// visible B (from the single visible input in Mmif mode). With
/// ChromaMode::GrayOnly the fused luminance is replicated.
RgbImage fuse_rgb(const std::vector<RgbImage>& visible, const std::optional<GrayImage>& infrared,
                  const FusionConfig& cfg);

}  // namespace ff

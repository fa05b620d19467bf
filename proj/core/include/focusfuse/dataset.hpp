#pragma once

#include <cstdint>
#include <optional>

#include "focusfuse/image.hpp"

namespace ff {

/// xorshift64* with a splitmix64-mixed seed. Fixed constants, so streams are
/// identical across platforms for a given seed.
class Rng {
  public:
    explicit Rng(uint64_t seed);
    uint64_t next();
    /// Uniform double in [0, 1) from the top 53 bits.
    double next_double();
    /// Uniform integer in [0, n).
    uint64_t next_below(uint64_t n);

  private:
    uint64_t state_;
};

/// One 64-bit splitmix64 step; used to derive per-item seeds from a base seed.
uint64_t splitmix64(uint64_t x);

enum class MaskShape : int {
    HalfPlane = 0,
    Rect = 1,
    Ellipse = 2,
    PolyBlob = 3,
};

struct MaskSpec {
    uint64_t seed = 0;
    std::optional<MaskShape> shape;  // unset: sampled uniformly from the seed
    double min_area_frac = 0.2;
    double max_area_frac = 0.8;
};

struct MaskPair {
    BinaryMask m1;
    BinaryMask m2;  // exact complement of m1
    MaskShape shape = MaskShape::HalfPlane;
    double area_frac = 0.0;  // fraction of set pixels in m1
};

/// Rasterize a seeded random shape whose area fraction is guaranteed to lie
/// within [min_area_frac, max_area_frac]; m2 is the complement. Identical
/// seeds produce identical masks.
MaskPair gen_mask_pair(int width, int height, const MaskSpec& spec);

struct DefocusPair {
    GrayImage f1;  // sharp where m1, blurred where m2
    GrayImage f2;  // sharp where m2, blurred where m1
};

/// Simulate a complementary-focus pair from an all-in-focus image:
/// f_blur = gaussian_blur(f_clear, sigma), then hard per-pixel composition
/// against the mask pair. Recombining the sharp halves reproduces f_clear
/// bit-exactly.
DefocusPair simulate_defocus(const GrayImage& f_clear, const BinaryMask& m1, const BinaryMask& m2,
                             double sigma = 5.0);

const char* mask_shape_name(MaskShape s);

}  // namespace ff

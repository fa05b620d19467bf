#include <doctest.h>

#include "focusfuse/dataset.hpp"
#include "focusfuse/raster.hpp"
#include "support/testutil.hpp"

using namespace ff;

TEST_CASE("mask pairs are exactly complementary and deterministic") {
    for (uint64_t seed : {0ull, 1ull, 42ull, 0xDEADBEEFull}) {
        MaskSpec spec;
        spec.seed = seed;
        MaskPair p = gen_mask_pair(80, 64, spec);
        for (size_t i = 0; i < p.m1.data.size(); ++i)
            CHECK((p.m1.data[i] ^ p.m2.data[i]) == 1);

        MaskPair again = gen_mask_pair(80, 64, spec);
        CHECK(p.m1.data == again.m1.data);
        CHECK(p.shape == again.shape);
    }
}

TEST_CASE("every sampled mask respects the area bounds") {
    size_t shape_seen[4] = {0, 0, 0, 0};
    for (uint64_t seed = 0; seed < 1000; ++seed) {
        MaskSpec spec;
        spec.seed = seed;
        MaskPair p = gen_mask_pair(96, 96, spec);
        CHECK(p.area_frac >= 0.2);
        CHECK(p.area_frac <= 0.8);
        ++shape_seen[static_cast<int>(p.shape)];
    }
    for (size_t count : shape_seen) CHECK(count > 100);  // all four families occur
}

TEST_CASE("pinned shapes are honored") {
    for (MaskShape shape :
         {MaskShape::HalfPlane, MaskShape::Rect, MaskShape::Ellipse, MaskShape::PolyBlob}) {
        MaskSpec spec;
        spec.seed = 7;
        spec.shape = shape;
        MaskPair p = gen_mask_pair(64, 64, spec);
        // fallback can demote to a half plane, but never for these seeds
        CHECK(p.shape == shape);
        CHECK(p.area_frac >= 0.2);
        CHECK(p.area_frac <= 0.8);
    }
}

TEST_CASE("simulate_defocus: masks select sharp/blurred sides exactly") {
    GrayImage clear = testutil::textured_scene(64, 64, 610);
    GrayImage blur = gaussian_blur(clear, 5.0);
    BinaryMask ones(64, 64, true);
    DefocusPair p = simulate_defocus(clear, ones, ones.complement(), 5.0);
    CHECK(p.f1.data == clear.data);
    CHECK(p.f2.data == blur.data);
}

TEST_CASE("recombination identities hold bit-exactly") {
    GrayImage clear = testutil::textured_scene(72, 56, 611);
    MaskSpec spec;
    spec.seed = 612;
    MaskPair masks = gen_mask_pair(72, 56, spec);
    DefocusPair p = simulate_defocus(clear, masks.m1, masks.m2, 5.0);
    GrayImage blur = gaussian_blur(clear, 5.0);

    for (size_t i = 0; i < clear.data.size(); ++i) {
        const double sharp = masks.m1.data[i] ? p.f1.data[i] : p.f2.data[i];
        const double soft = masks.m1.data[i] ? p.f2.data[i] : p.f1.data[i];
        CHECK(sharp == clear.data[i]);
        CHECK(soft == blur.data[i]);
    }
}

TEST_CASE("non-complementary masks are rejected") {
    GrayImage clear(32, 32, 0.5);
    BinaryMask m1(32, 32, true);
    BinaryMask bad(32, 32, true);
    CHECK_THROWS_AS(simulate_defocus(clear, m1, bad, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(simulate_defocus(clear, m1, m1.complement(), 0.0), std::invalid_argument);
}

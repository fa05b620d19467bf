#include <doctest.h>

#include <cmath>

#include "focusfuse/metrics.hpp"
#include "focusfuse/raster.hpp"
#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace ff;

TEST_CASE("avg_gradient: fixtures and oracle equivalence") {
    CHECK(avg_gradient(GrayImage(16, 16, 0.5)) == doctest::Approx(0.0));

    // one 8-bit step per column: dx = 1 on the 0-255 scale
    GrayImage ramp(32, 16);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 32; ++x) ramp.at(x, y) = x / 255.0;
    CHECK(avg_gradient(ramp) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));

    for (uint64_t seed = 0; seed < 20; ++seed) {
        GrayImage img = testutil::random_image(16, 16, 700 + seed);
        CHECK(avg_gradient(img) == doctest::Approx(oracle::avg_gradient(img)).epsilon(1e-9));
    }

    GrayImage img = testutil::random_image(16, 16, 720);
    CHECK(avg_gradient(add_scalar(img, 0.1)) == doctest::Approx(avg_gradient(img)).epsilon(1e-9));
    CHECK_THROWS_AS(avg_gradient(GrayImage(1, 5, 0.0)), std::invalid_argument);
}

TEST_CASE("spatial_frequency: fixtures and oracle equivalence") {
    CHECK(spatial_frequency(GrayImage(16, 16, 0.25)) == doctest::Approx(0.0));

    GrayImage checker(16, 16);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) checker.at(x, y) = (x + y) % 2;
    CHECK(spatial_frequency(checker) == doctest::Approx(255.0 * std::sqrt(2.0)).epsilon(1e-9));

    for (uint64_t seed = 0; seed < 20; ++seed) {
        GrayImage img = testutil::random_image(16, 16, 730 + seed);
        CHECK(spatial_frequency(img) ==
              doctest::Approx(oracle::spatial_frequency(img)).epsilon(1e-9));
    }

    GrayImage img = testutil::random_image(16, 16, 750);
    CHECK(spatial_frequency(add_scalar(img, 0.2)) ==
          doctest::Approx(spatial_frequency(img)).epsilon(1e-9));
}

TEST_CASE("psnr_fusion: cap, one-level offset, mean over sources") {
    GrayImage img = testutil::random_image(16, 16, 760);
    CHECK(psnr_fusion(img, {img}) == doctest::Approx(100.0));

    GrayImage offset = add_scalar(img, 1.0 / 255.0);
    const double expect = 20.0 * std::log10(255.0);  // MSE = 1 on the 0-255 scale
    CHECK(psnr_fusion(offset, {img}) == doctest::Approx(expect).epsilon(1e-9));
    CHECK(expect == doctest::Approx(48.13).epsilon(1e-3));

    CHECK(psnr_fusion(img, {img, offset}) == doctest::Approx((100.0 + expect) / 2.0).epsilon(1e-9));

    for (uint64_t seed = 0; seed < 20; ++seed) {
        GrayImage f = testutil::random_image(16, 16, 770 + seed);
        GrayImage s = testutil::random_image(16, 16, 790 + seed);
        CHECK(psnr_fusion(f, {s}) == doctest::Approx(oracle::psnr_single(f, s)).epsilon(1e-9));
    }

    CHECK_THROWS_AS(psnr_fusion(img, {GrayImage(8, 8, 0.0)}), std::invalid_argument);
}

TEST_CASE("q_g: perfect copies score high, constants score zero, symmetric") {
    GrayImage scene = testutil::load_scene("scene_blocks.pgm");
    CHECK(q_g(scene, scene, scene) >= 0.95);

    GrayImage flat(scene.width, scene.height, 0.5);
    CHECK(q_g(flat, scene, scene) <= 0.05);

    GrayImage a = testutil::load_scene("scene_rings.pgm");
    GrayImage b = testutil::load_scene("scene_field.pgm");
    GrayImage fused = scale(add(a, b), 0.5);
    const double ab = q_g(fused, a, b);
    CHECK(ab == doctest::Approx(q_g(fused, b, a)).epsilon(1e-12));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);

    // constant sources have no edges to preserve
    CHECK(q_g(scene, flat, flat) == doctest::Approx(0.0));
}

TEST_CASE("q_s: identity, symmetry, oracle equivalence") {
    GrayImage scene = testutil::load_scene("scene_rings.pgm");
    CHECK(q_s(scene, scene, scene) == doctest::Approx(1.0).epsilon(1e-6));

    for (uint64_t seed = 0; seed < 20; ++seed) {
        GrayImage f = testutil::random_image(16, 16, 800 + seed);
        GrayImage a = testutil::random_image(16, 16, 820 + seed);
        GrayImage b = testutil::random_image(16, 16, 840 + seed);
        const double mine = q_s(f, a, b);
        CHECK(mine == doctest::Approx(oracle::piella_qs(f, a, b)).epsilon(1e-6));
        CHECK(mine == doctest::Approx(q_s(f, b, a)).epsilon(1e-12));
    }
}

TEST_CASE("q_m: golden identity value, symmetry, blur monotonicity") {
    GrayImage scene = testutil::load_scene("scene_field.pgm");
    // identical inputs: every coefficient ratio is 1, so the score is the
    // saturated sigmoid 0.9994 / (1 + e^-7.5) at both levels
    const double golden = 0.9994 / (1.0 + std::exp(-7.5));
    CHECK(q_m(scene, scene, scene) == doctest::Approx(golden).epsilon(1e-9));
    CHECK(golden == doctest::Approx(0.99884756).epsilon(1e-6));

    GrayImage a = testutil::load_scene("scene_blocks.pgm");
    GrayImage b = testutil::load_scene("scene_rings.pgm");
    GrayImage fused = scale(add(a, b), 0.5);
    CHECK(q_m(fused, a, b) == doctest::Approx(q_m(fused, b, a)).epsilon(1e-12));

    CHECK(q_m(gaussian_blur(fused, 2.0), a, b) <= q_m(fused, a, b));

    // odd dimensions go through the mirror pad
    GrayImage odd = testutil::random_image(15, 13, 860);
    CHECK_NOTHROW(q_m(odd, odd, odd));
    CHECK(q_m(odd, odd, odd) == doctest::Approx(golden).epsilon(1e-9));
}

TEST_CASE("evaluate_pair fills every metric") {
    GrayImage a = testutil::load_scene("scene_blocks.pgm");
    GrayImage b = testutil::load_scene("scene_rings.pgm");
    GrayImage fused = scale(add(a, b), 0.5);
    FusionReport r = evaluate_pair("pair0", fused, a, b);
    CHECK(r.id == "pair0");
    CHECK(r.q_g > 0.0);
    CHECK(r.q_m > 0.0);
    CHECK(r.q_s > 0.0);
    CHECK(r.ag > 0.0);
    CHECK(r.sf > 0.0);
    CHECK(r.psnr > 0.0);
}

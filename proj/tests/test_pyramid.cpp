#include <doctest.h>

#include <cmath>

#include "focusfuse/pyramid.hpp"
#include "support/testutil.hpp"

using namespace ff;

TEST_CASE("constant image: flat gaussians, zero laplacians") {
    PyramidStack pyr = build_pyramid(GrayImage(48, 48, 0.77), 3);
    for (const GrayImage& g : pyr.gaussian)
        for (double v : g.data) CHECK(v == doctest::Approx(0.77).epsilon(1e-9));
    for (const GrayImage& l : pyr.laplacian)
        for (double v : l.data) CHECK(v == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("level size contract for 64x64, N = 3") {
    PyramidStack pyr = build_pyramid(testutil::random_image(64, 64, 40), 3);
    REQUIRE(pyr.gaussian.size() == 4);
    REQUIRE(pyr.laplacian.size() == 3);
    const int gw[4] = {64, 32, 16, 8};
    for (int i = 0; i < 4; ++i) {
        CHECK(pyr.gaussian[i].width == gw[i]);
        CHECK(pyr.gaussian[i].height == gw[i]);
    }
    for (int i = 0; i < 3; ++i) {
        CHECK(pyr.laplacian[i].width == gw[i]);
        CHECK(pyr.laplacian[i].height == gw[i]);
    }
}

TEST_CASE("collapse reproduces the source for odd and even dimensions") {
    for (int n : {2, 3, 4}) {
        for (auto [w, h] : {std::pair{64, 96}, std::pair{67, 83}}) {
            GrayImage img = testutil::random_image(w, h, 41 + n);
            GrayImage back = collapse_pyramid(build_pyramid(img, n));
            REQUIRE(back.same_size(img));
            double max_err = 0.0;
            for (size_t i = 0; i < img.data.size(); ++i)
                max_err = std::max(max_err, std::fabs(back.data[i] - img.data[i]));
            CHECK(max_err <= 1e-12);
        }
    }
}

TEST_CASE("images too small for the level count are rejected") {
    CHECK_THROWS_AS(build_pyramid(GrayImage(16, 16, 0.0), 3), std::invalid_argument);
    CHECK_THROWS_AS(build_pyramid(GrayImage(16, 64, 0.0), 3), std::invalid_argument);
    CHECK_NOTHROW(build_pyramid(GrayImage(32, 64, 0.0), 3));
}

#include <doctest.h>

#include <cmath>

#include "focusfuse/structure_fusion.hpp"
#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace ff;

TEST_CASE("dct3 fixtures: DC level, round trip, Parseval") {
    std::array<double, 9> flat;
    flat.fill(0.4);
    auto coeffs = dct3(flat);
    CHECK(coeffs[0] == doctest::Approx(3 * 0.4).epsilon(1e-12));
    for (size_t i = 1; i < 9; ++i) CHECK(coeffs[i] == doctest::Approx(0.0));

    std::array<double, 9> block = {0.1, 0.9, 0.3, 0.4, 0.2, 0.8, 0.6, 0.5, 0.7};
    auto fw = dct3(block);
    auto oracle_fw = oracle::dct3(block);
    for (size_t i = 0; i < 9; ++i) CHECK(fw[i] == doctest::Approx(oracle_fw[i]).epsilon(1e-12));

    auto back = idct3(fw);
    for (size_t i = 0; i < 9; ++i) CHECK(back[i] == doctest::Approx(block[i]).epsilon(1e-12));

    double pix2 = 0.0, coef2 = 0.0;
    for (size_t i = 0; i < 9; ++i) {
        pix2 += block[i] * block[i];
        coef2 += fw[i] * fw[i];
    }
    CHECK(coef2 == doctest::Approx(pix2).epsilon(1e-12));
}

TEST_CASE("freq_variance: flat zero, stripes positive, DC invariance, transpose symmetry") {
    CHECK(freq_variance(GrayImage(9, 9, 0.5)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(freq_variance(GrayImage(2, 2, 0.0)), std::invalid_argument);

    // horizontal stripes: rows constant, alternating down the columns
    GrayImage stripes(6, 6);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x) stripes.at(x, y) = y % 2 ? 1.0 : 0.0;
    const double psi = freq_variance(stripes);
    CHECK(psi > 0.0);

    // brute-force the same 6x6 by evaluating each block with the oracle DCT
    double expected = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            std::array<double, 9> block;
            for (int y = 0; y < 3; ++y)
                for (int x = 0; x < 3; ++x)
                    block[static_cast<size_t>(y) * 3 + x] = stripes.at(i * 3 + x, j * 3 + y);
            auto c = oracle::dct3(block);
            const double groups[4][2] = {{c[1], c[2]}, {c[3], c[6]}, {c[4], c[8]}, {c[5], c[7]}};
            double sigma[4], phi = 0.0;
            for (int d = 0; d < 4; ++d) {
                const double m = 0.5 * (groups[d][0] + groups[d][1]);
                sigma[d] = std::sqrt(0.5 * ((groups[d][0] - m) * (groups[d][0] - m) +
                                            (groups[d][1] - m) * (groups[d][1] - m)));
                phi += sigma[d];
            }
            phi /= 4.0;
            if (phi < 1e-12) continue;
            double mean_n = 0.0;
            for (double s : sigma) mean_n += s / phi;
            mean_n /= 4.0;
            double var = 0.0;
            for (double s : sigma) var += (s / phi - mean_n) * (s / phi - mean_n);
            expected += var / 4.0;
        }
    expected /= 4.0;
    CHECK(psi == doctest::Approx(expected).epsilon(1e-12));

    GrayImage img = testutil::random_image(12, 12, 70);
    CHECK(freq_variance(add_scalar(img, 0.2)) == doctest::Approx(freq_variance(img)).epsilon(1e-9));

    GrayImage transposed(12, 12);
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 12; ++x) transposed.at(y, x) = img.at(x, y);
    CHECK(freq_variance(transposed) == doctest::Approx(freq_variance(img)).epsilon(1e-12));
}

TEST_CASE("fuse_structure: weights sum to one and respect degenerate inputs") {
    GrayImage s = testutil::load_scene("scene_blocks.pgm");
    std::vector<StructureFeatures> feats;
    GrayImage same = fuse_structure({s, s, s}, 3, &feats);
    double wsum = 0.0;
    for (const auto& f : feats) {
        CHECK(f.weight >= 0.0);
        wsum += f.weight;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 0; i < s.data.size(); ++i)
        CHECK(same.data[i] == doctest::Approx(s.data[i]).epsilon(1e-12));

    // only the first layer carries signal; flats have psi = 0
    GrayImage flat1(96, 96, 0.2), flat2(96, 96, 0.9);
    GrayImage picked = fuse_structure({s, flat1, flat2}, 3, &feats);
    CHECK(feats[0].weight == doctest::Approx(1.0));
    for (size_t i = 0; i < s.data.size(); ++i)
        CHECK(picked.data[i] == doctest::Approx(s.data[i]).epsilon(1e-12));

    // all-flat inputs: uniform fallback
    GrayImage flat3(96, 96, 0.5);
    GrayImage avg = fuse_structure({flat1, flat2, flat3}, 3, &feats);
    for (const auto& f : feats) CHECK(f.weight == doctest::Approx(1.0 / 3.0));
    for (double v : avg.data) CHECK(v == doctest::Approx((0.2 + 0.9 + 0.5) / 3.0).epsilon(1e-12));

    // pixelwise range: FS within [min_m S_m, max_m S_m]
    GrayImage a = testutil::load_scene("scene_rings.pgm");
    GrayImage b = testutil::load_scene("scene_field.pgm");
    GrayImage fs = fuse_structure({s, a, b}, 3, &feats);
    for (size_t i = 0; i < fs.data.size(); ++i) {
        const double lo = std::min({s.data[i], a.data[i], b.data[i]});
        const double hi = std::max({s.data[i], a.data[i], b.data[i]});
        CHECK(fs.data[i] >= lo - 1e-12);
        CHECK(fs.data[i] <= hi + 1e-12);
    }

    CHECK_THROWS_AS(fuse_structure({s, GrayImage(10, 10, 0.0)}), std::invalid_argument);
}

#include "focusfuse/pyramid.hpp"

#include <algorithm>

#include "focusfuse/raster.hpp"

namespace ff {

PyramidStack build_pyramid(const GrayImage& img, int levels_n) {
    if (img.empty()) throw std::invalid_argument("build_pyramid: empty image");
    if (levels_n < 1) throw std::invalid_argument("build_pyramid: levels_n must be at least 1");
    if (std::min(img.width, img.height) >> levels_n < 4)
        throw std::invalid_argument("build_pyramid: image " + std::to_string(img.width) + "x" +
                                    std::to_string(img.height) + " too small for " +
                                    std::to_string(levels_n) + " levels");

    PyramidStack pyr;
    pyr.levels_n = levels_n;
    pyr.gaussian.reserve(levels_n + 1);
    pyr.gaussian.push_back(img);
    for (int l = 0; l < levels_n; ++l) pyr.gaussian.push_back(downsample2(pyr.gaussian.back()));

    pyr.laplacian.reserve(levels_n);
    for (int l = 0; l < levels_n; ++l) {
        const GrayImage& g = pyr.gaussian[l];
        pyr.laplacian.push_back(subtract(g, upsample2(pyr.gaussian[l + 1], g.width, g.height)));
    }
    return pyr;
}

GrayImage collapse_pyramid(const PyramidStack& pyr) {
    if (pyr.gaussian.empty() || pyr.laplacian.size() + 1 != pyr.gaussian.size())
        throw std::invalid_argument("collapse_pyramid: malformed stack");
    GrayImage acc = pyr.gaussian.back();
    for (int l = pyr.levels_n - 1; l >= 0; --l) {
        const GrayImage& target = pyr.laplacian[l];
        acc = add(pyr.laplacian[l], upsample2(acc, target.width, target.height));
    }
    return acc;
}

}  // namespace ff

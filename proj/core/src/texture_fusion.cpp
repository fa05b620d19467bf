#include "focusfuse/texture_fusion.hpp"

#include <cmath>
#include <vector>

#include "focusfuse/raster.hpp"

namespace ff {

void grad_maps(const GrayImage& t, double p, GrayImage& gm_x, GrayImage& gm_y) {
    if (t.empty()) throw std::invalid_argument("grad_maps: empty image");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("grad_maps: p must be in (0,1]");
    const double r = p * std::exp(p / 2.0 - 1.0);
    gm_x = GrayImage(t.width, t.height);
    gm_y = GrayImage(t.width, t.height);
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width; ++x) {
            // [-1,1] along x, [1,-1]' along y; mirrored edge differences are zero
            const double dx = t.at(mirror_index(x + 1, t.width), y) - t.at(x, y);
            const double dy = t.at(x, y) - t.at(x, mirror_index(y + 1, t.height));
            gm_x.at(x, y) = r * dx - std::pow(std::max(2.0 * dx + 0.01, 1e-6), p);
            gm_y.at(x, y) = r * dy - std::pow(std::max(2.0 * dy + 0.01, 1e-6), p);
        }
}

GrayImage local_spatial_frequency(const GrayImage& img, int window) {
    if (img.empty()) throw std::invalid_argument("local_spatial_frequency: empty image");
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("local_spatial_frequency: window must be odd and >= 3");

    GrayImage dh2(img.width, img.height), dv2(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const double dh = img.at(mirror_index(x + 1, img.width), y) - img.at(x, y);
            const double dv = img.at(x, mirror_index(y + 1, img.height)) - img.at(x, y);
            dh2.at(x, y) = dh * dh;
            dv2.at(x, y) = dv * dv;
        }
    GrayImage rf2 = box_mean(dh2, window);
    GrayImage cf2 = box_mean(dv2, window);
    GrayImage out(img.width, img.height);
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = std::sqrt(std::max(rf2.data[i] + cf2.data[i], 0.0));
    return out;
}

GrayImage significance_map(const PyramidStack& pyr, int window) {
    if (pyr.gaussian.empty()) throw std::invalid_argument("significance_map: malformed stack");
    const GrayImage& base = pyr.gaussian[0];
    if (pyr.levels_n < 2) return GrayImage(base.width, base.height, 0.0);

    GrayImage acc;
    for (int k = pyr.levels_n - 1; k >= 1; --k) {
        GrayImage sf_g = local_spatial_frequency(pyr.gaussian[k], window);
        GrayImage sf_l = local_spatial_frequency(pyr.laplacian[k], window);
        GrayImage feat(sf_g.width, sf_g.height);
        for (size_t i = 0; i < feat.data.size(); ++i)
            feat.data[i] = std::sqrt(std::max(sf_g.data[i] + sf_l.data[i], 0.0));
        acc = acc.empty() ? std::move(feat) : add(acc, feat);
        const GrayImage& next = pyr.gaussian[k - 1];
        acc = upsample2(acc, next.width, next.height);
    }
    return acc;
}

SaliencyMaps salient_feature_map(const GrayImage& t, int levels_n, int window, double p) {
    SaliencyMaps maps;
    grad_maps(t, p, maps.gm_x, maps.gm_y);
    maps.sm = significance_map(build_pyramid(t, levels_n), window);
    maps.tm = GrayImage(t.width, t.height);
    for (size_t i = 0; i < maps.tm.data.size(); ++i)
        maps.tm.data[i] = maps.sm.data[i] *
                          std::hypot(maps.gm_x.data[i], maps.gm_y.data[i]);
    return maps;
}

BinaryMask focus_decision(const GrayImage& tm1, const GrayImage& tm2) {
    require_same_size(tm1, tm2, "focus_decision");
    BinaryMask map(tm1.width, tm1.height);
    for (size_t i = 0; i < map.data.size(); ++i) map.data[i] = tm1.data[i] > tm2.data[i] ? 1 : 0;
    return map;
}

namespace {

// Flip 8-connected components (either polarity) with area < min_area pixels.
void remove_small_regions(BinaryMask& map, double min_area) {
    const int w = map.width, h = map.height;
    std::vector<int> label(map.pixel_count(), -1);
    std::vector<size_t> area;
    std::vector<size_t> stack;

    for (size_t start = 0; start < map.pixel_count(); ++start) {
        if (label[start] >= 0) continue;
        const int id = static_cast<int>(area.size());
        const uint8_t value = map.data[start];
        size_t count = 0;
        stack.push_back(start);
        label[start] = id;
        while (!stack.empty()) {
            const size_t p = stack.back();
            stack.pop_back();
            ++count;
            const int px = static_cast<int>(p % w), py = static_cast<int>(p / w);
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = px + dx, ny = py + dy;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const size_t q = static_cast<size_t>(ny) * w + nx;
                    if (label[q] < 0 && map.data[q] == value) {
                        label[q] = id;
                        stack.push_back(q);
                    }
                }
        }
        area.push_back(count);
    }
    for (size_t i = 0; i < map.pixel_count(); ++i)
        if (static_cast<double>(area[label[i]]) < min_area) map.data[i] ^= 1;
}

BinaryMask majority_filter(const BinaryMask& map, int window) {
    GrayImage as_gray(map.width, map.height);
    for (size_t i = 0; i < map.pixel_count(); ++i) as_gray.data[i] = map.data[i];
    GrayImage frac = box_mean(as_gray, window);
    BinaryMask out(map.width, map.height);
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] = frac.data[i] > 0.5 ? 1 : 0;
    return out;
}

}  // namespace

BinaryMask consistency_verify(const BinaryMask& map_raw, int levels, double area_frac) {
    if (map_raw.pixel_count() == 0) throw std::invalid_argument("consistency_verify: empty map");
    if (levels < 0) throw std::invalid_argument("consistency_verify: levels must be nonnegative");
    if (!(area_frac >= 0.0 && area_frac <= 1.0))
        throw std::invalid_argument("consistency_verify: area_frac must be in [0,1]");

    BinaryMask out = map_raw;
    const double min_area = area_frac * static_cast<double>(map_raw.pixel_count());
    if (min_area > 1.0) remove_small_regions(out, min_area);
    for (int l = 1; l <= levels; ++l) out = majority_filter(out, (1 << l) + 1);
    return out;
}

GrayImage compose_focused_texture(const GrayImage& t1, const GrayImage& t2, const BinaryMask& omp) {
    return select(t1, t2, omp);
}

GrayImage fuse_texture(const GrayImage& t4, const GrayImage& t3, const GrayImage& tm4,
                       const GrayImage& tm3) {
    require_same_size(t4, t3, "fuse_texture");
    require_same_size(tm4, tm3, "fuse_texture weights");
    require_same_size(t4, tm4, "fuse_texture");
    GrayImage out(t4.width, t4.height);
    for (size_t i = 0; i < out.data.size(); ++i) {
        const double sum = tm3.data[i] + tm4.data[i];
        const double w4 = sum < 1e-12 ? 0.5 : tm4.data[i] / sum;
        out.data[i] = w4 * t4.data[i] + (1.0 - w4) * t3.data[i];
    }
    return out;
}

}  // namespace ff

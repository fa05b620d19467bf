#include "focusfuse/pipeline.hpp"

#include <cmath>

#include "focusfuse/structure_fusion.hpp"

namespace ff {

void FusionConfig::validate() const {
    ssf.validate();
    if (pyr_levels < 1) throw std::invalid_argument("pyr.levels must be at least 1");
    if (sf_window < 3 || sf_window % 2 == 0)
        throw std::invalid_argument("sf.window must be odd and >= 3");
    if (cv_levels < 0) throw std::invalid_argument("cv.levels must be nonnegative");
    if (!(cv_area_frac >= 0.0 && cv_area_frac <= 1.0))
        throw std::invalid_argument("cv.area_frac must be in [0,1]");
    if (!(grad_p > 0.0 && grad_p <= 1.0)) throw std::invalid_argument("grad.p must be in (0,1]");
    if (struct_block < 2) throw std::invalid_argument("struct.block must be at least 2");
}

namespace {

GrayImage clamped_sum(const GrayImage& ft, const GrayImage& fs) {
    GrayImage out = add(ft, fs);
    for (double& v : out.data) v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    return out;
}

}  // namespace

FusionResult fuse_detailed(const std::vector<GrayImage>& inputs, const FusionConfig& cfg) {
    cfg.validate();
    const size_t arity = static_cast<size_t>(cfg.input_arity());
    if (inputs.size() != arity)
        throw std::invalid_argument("fuse: expected " + std::to_string(arity) +
                                    " inputs for this mode, got " + std::to_string(inputs.size()));
    for (size_t i = 1; i < inputs.size(); ++i)
        require_same_size(inputs[0], inputs[i], "fuse inputs");

    FusionResult res;

    if (cfg.mode == FusionMode::Mfif) {
        Decomposition d1 = decompose(inputs[0], cfg.ssf);
        Decomposition d2 = decompose(inputs[1], cfg.ssf);
        SaliencyMaps s1 = salient_feature_map(d1.texture, cfg.pyr_levels, cfg.sf_window, cfg.grad_p);
        SaliencyMaps s2 = salient_feature_map(d2.texture, cfg.pyr_levels, cfg.sf_window, cfg.grad_p);
        res.map_raw = focus_decision(s1.tm, s2.tm);
        res.map_verified = consistency_verify(res.map_raw, cfg.cv_levels, cfg.cv_area_frac);
        res.focused_texture = compose_focused_texture(d1.texture, d2.texture, res.map_verified);
        res.fused_texture = res.focused_texture;
        res.fused_structure =
            fuse_structure({d1.structure, d2.structure}, cfg.struct_block);
        res.sm1 = std::move(s1.sm);
        res.sm2 = std::move(s2.sm);
        res.tm1 = std::move(s1.tm);
        res.tm2 = std::move(s2.tm);
        res.structures = {std::move(d1.structure), std::move(d2.structure)};
        res.textures = {std::move(d1.texture), std::move(d2.texture)};
    } else {
        // Mmif runs the Tri path with the visible input duplicated; the
        // duplicate decomposition is computed once and reused.
        const bool mmif = cfg.mode == FusionMode::Mmif;
        Decomposition d1 = decompose(inputs[0], cfg.ssf);
        Decomposition d2 = mmif ? d1 : decompose(inputs[1], cfg.ssf);
        Decomposition d3 = decompose(inputs[mmif ? 1 : 2], cfg.ssf);

        SaliencyMaps s1 = salient_feature_map(d1.texture, cfg.pyr_levels, cfg.sf_window, cfg.grad_p);
        SaliencyMaps s2 = mmif ? s1 : salient_feature_map(d2.texture, cfg.pyr_levels,
                                                          cfg.sf_window, cfg.grad_p);
        res.map_raw = focus_decision(s1.tm, s2.tm);
        res.map_verified = consistency_verify(res.map_raw, cfg.cv_levels, cfg.cv_area_frac);
        res.focused_texture = compose_focused_texture(d1.texture, d2.texture, res.map_verified);

        SaliencyMaps s4 =
            salient_feature_map(res.focused_texture, cfg.pyr_levels, cfg.sf_window, cfg.grad_p);
        SaliencyMaps s3 = salient_feature_map(d3.texture, cfg.pyr_levels, cfg.sf_window, cfg.grad_p);
        res.fused_texture = fuse_texture(res.focused_texture, d3.texture, s4.tm, s3.tm);
        res.fused_structure =
            fuse_structure({d1.structure, d2.structure, d3.structure}, cfg.struct_block);

        res.sm1 = std::move(s1.sm);
        res.sm2 = std::move(s2.sm);
        res.tm1 = std::move(s1.tm);
        res.tm2 = std::move(s2.tm);
        res.tm3 = std::move(s3.tm);
        res.tm4 = std::move(s4.tm);
        res.structures = {std::move(d1.structure), std::move(d2.structure), std::move(d3.structure)};
        res.textures = {std::move(d1.texture), std::move(d2.texture), std::move(d3.texture)};
    }

    res.fused = clamped_sum(res.fused_texture, res.fused_structure);
    return res;
}

GrayImage fuse(const std::vector<GrayImage>& inputs, const FusionConfig& cfg) {
    return fuse_detailed(inputs, cfg).fused;
}

RgbImage fuse_rgb(const std::vector<RgbImage>& visible, const std::optional<GrayImage>& infrared,
                  const FusionConfig& cfg) {
    const bool needs_ir = cfg.mode != FusionMode::Mfif;
    const size_t needs_vis = cfg.mode == FusionMode::Mmif ? 1 : 2;
    if (visible.size() != needs_vis)
        throw std::invalid_argument("fuse_rgb: expected " + std::to_string(needs_vis) +
                                    " visible input(s), got " + std::to_string(visible.size()));
    if (needs_ir != infrared.has_value())
        throw std::invalid_argument(needs_ir ? "fuse_rgb: mode requires an infrared input"
                                             : "fuse_rgb: mode takes no infrared input");
    for (const RgbImage& v : visible)
        if (!v.valid()) throw std::invalid_argument("fuse_rgb: invalid RGB input");

    std::vector<GrayImage> gray;
    for (const RgbImage& v : visible) gray.push_back(v.luminance());
    if (infrared) gray.push_back(*infrared);

    FusionResult res = fuse_detailed(gray, cfg);

    RgbImage out;
    if (cfg.chroma == ChromaMode::GrayOnly) {
        out.r = res.fused;
        out.g = res.fused;
        out.b = res.fused;
        return out;
    }

    // chroma offsets (channel minus luma) carried from the deciding visible source
    const RgbImage& va = visible[0];
    const RgbImage& vb = visible.size() > 1 ? visible[1] : visible[0];
    const GrayImage& ya = gray[0];
    const GrayImage& yb = visible.size() > 1 ? gray[1] : gray[0];
    out.r = GrayImage(res.fused.width, res.fused.height);
    out.g = GrayImage(res.fused.width, res.fused.height);
    out.b = GrayImage(res.fused.width, res.fused.height);
    for (size_t i = 0; i < res.fused.data.size(); ++i) {
        const bool from_a = visible.size() == 1 || res.map_verified.data[i];
        const RgbImage& src = from_a ? va : vb;
        const double y = from_a ? ya.data[i] : yb.data[i];
        const double f = res.fused.data[i];
        auto mix = [&](const GrayImage& chan) {
            const double v = f + (chan.data[i] - y);
            return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        };
        out.r.data[i] = mix(src.r);
        out.g.data[i] = mix(src.g);
        out.b.data[i] = mix(src.b);
    }
    return out;
}

}  // namespace ff

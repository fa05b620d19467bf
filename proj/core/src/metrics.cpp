#include "focusfuse/metrics.hpp"

#include <cmath>
#include <vector>

namespace ff {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Xydeas-Petrovic sigmoid constants.
constexpr double kGammaG = 0.9994, kKappaG = -15.0, kSigmaG = 0.5;
constexpr double kGammaA = 0.9879, kKappaA = -22.0, kSigmaA = 0.8;

void check_min_dims(const GrayImage& f, int min_w, int min_h, const char* where) {
    if (f.width < min_w || f.height < min_h)
        throw std::invalid_argument(std::string(where) + ": image must be at least " +
                                    std::to_string(min_w) + "x" + std::to_string(min_h));
}

double sigmoid_g(double x) { return kGammaG / (1.0 + std::exp(kKappaG * (x - kSigmaG))); }
double sigmoid_a(double x) { return kGammaA / (1.0 + std::exp(kKappaA * (x - kSigmaA))); }

// Sobel gradient strength and atan(gy/gx) orientation, mirror padding.
void sobel(const GrayImage& f, GrayImage& strength, GrayImage& orientation) {
    strength = GrayImage(f.width, f.height);
    orientation = GrayImage(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            auto p = [&](int dx, int dy) { return f.at_mirror(x + dx, y + dy); };
            const double gx = p(1, -1) + 2.0 * p(1, 0) + p(1, 1) -
                              (p(-1, -1) + 2.0 * p(-1, 0) + p(-1, 1));
            const double gy = p(-1, 1) + 2.0 * p(0, 1) + p(1, 1) -
                              (p(-1, -1) + 2.0 * p(0, -1) + p(1, -1));
            strength.at(x, y) = std::hypot(gx, gy);
            orientation.at(x, y) =
                (gx == 0.0 && gy == 0.0) ? 0.0 : std::atan(gy / gx);
        }
}

// Per-pixel edge preservation of source (gs, os) in the fused (gf, of).
double preservation(double gs, double os, double gf, double of) {
    double g;
    if (gs < 1e-12 && gf < 1e-12)
        g = 1.0;
    else if (gf <= gs)
        g = gf / gs;
    else
        g = gs / gf;
    const double a = 1.0 - std::fabs(os - of) / (kPi / 2.0);
    return sigmoid_g(g) * sigmoid_a(a);
}

// Wang-Bovik universal image quality index over one window, with the
// reference implementation's degenerate-denominator conventions.
double uiqi(double mu_x, double mu_y, double var_x, double var_y, double cov) {
    const double d1 = var_x + var_y;
    const double d2 = mu_x * mu_x + mu_y * mu_y;
    if (d1 > 1e-12 && d2 > 1e-12) return 4.0 * cov * mu_x * mu_y / (d1 * d2);
    if (d1 <= 1e-12 && d2 > 1e-12) return 2.0 * mu_x * mu_y / d2;
    return 1.0;
}

// Orthonormal one-level 2-D Haar split of an even-dimension image.
struct HaarBands {
    GrayImage ll, lh, hl, hh;
};

HaarBands haar_level(const GrayImage& f) {
    const int w = f.width / 2, h = f.height / 2;
    HaarBands out{GrayImage(w, h), GrayImage(w, h), GrayImage(w, h), GrayImage(w, h)};
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double p00 = f.at(2 * x, 2 * y), p01 = f.at(2 * x + 1, 2 * y);
            const double p10 = f.at(2 * x, 2 * y + 1), p11 = f.at(2 * x + 1, 2 * y + 1);
            out.ll.at(x, y) = (p00 + p01 + p10 + p11) / 2.0;
            out.lh.at(x, y) = (p00 - p01 + p10 - p11) / 2.0;  // horizontal detail
            out.hl.at(x, y) = (p00 + p01 - p10 - p11) / 2.0;  // vertical detail
            out.hh.at(x, y) = (p00 - p01 - p10 + p11) / 2.0;
        }
    return out;
}

GrayImage mirror_pad_to_multiple(const GrayImage& f, int mult) {
    const int w = (f.width + mult - 1) / mult * mult;
    const int h = (f.height + mult - 1) / mult * mult;
    if (w == f.width && h == f.height) return f;
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.at(x, y) = f.at_mirror(x, y);
    return out;
}

// Coefficient-magnitude preservation of one source band in the fused band,
// accumulated with source-magnitude weights.
void band_accumulate(const GrayImage& src, const GrayImage& fus, double& num, double& den) {
    for (size_t i = 0; i < src.data.size(); ++i) {
        const double s = std::fabs(src.data[i]);
        const double f = std::fabs(fus.data[i]);
        const double r = (s < 1e-12 && f < 1e-12) ? 1.0 : std::min(s, f) / std::max(s, f);
        num += sigmoid_g(r) * s;
        den += s;
    }
}

}  // namespace

double avg_gradient(const GrayImage& f) {
    check_min_dims(f, 2, 2, "avg_gradient");
    double sum = 0.0;
    for (int y = 0; y < f.height - 1; ++y)
        for (int x = 0; x < f.width - 1; ++x) {
            const double dx = 255.0 * (f.at(x + 1, y) - f.at(x, y));
            const double dy = 255.0 * (f.at(x, y + 1) - f.at(x, y));
            sum += std::sqrt((dx * dx + dy * dy) / 2.0);
        }
    return sum / (static_cast<double>(f.width - 1) * (f.height - 1));
}

double spatial_frequency(const GrayImage& f) {
    check_min_dims(f, 2, 2, "spatial_frequency");
    double rf = 0.0, cf = 0.0;
    for (int y = 0; y < f.height; ++y)
        for (int x = 1; x < f.width; ++x) {
            const double d = 255.0 * (f.at(x, y) - f.at(x - 1, y));
            rf += d * d;
        }
    for (int y = 1; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            const double d = 255.0 * (f.at(x, y) - f.at(x, y - 1));
            cf += d * d;
        }
    rf /= static_cast<double>(f.height) * (f.width - 1);
    cf /= static_cast<double>(f.height - 1) * f.width;
    return std::sqrt(rf + cf);
}

double psnr_fusion(const GrayImage& fused, const std::vector<GrayImage>& sources) {
    if (sources.empty()) throw std::invalid_argument("psnr_fusion: no sources");
    double sum = 0.0;
    for (const GrayImage& src : sources) {
        require_same_size(fused, src, "psnr_fusion");
        double mse = 0.0;
        for (size_t i = 0; i < fused.data.size(); ++i) {
            const double d = 255.0 * (fused.data[i] - src.data[i]);
            mse += d * d;
        }
        mse /= static_cast<double>(fused.data.size());
        const double psnr = mse <= 0.0 ? 100.0 : 10.0 * std::log10(255.0 * 255.0 / mse);
        sum += std::min(psnr, 100.0);
    }
    return sum / static_cast<double>(sources.size());
}

double q_g(const GrayImage& fused, const GrayImage& a, const GrayImage& b) {
    require_same_size(fused, a, "q_g");
    require_same_size(fused, b, "q_g");
    GrayImage ga, oa, gb, ob, gf, of;
    sobel(a, ga, oa);
    sobel(b, gb, ob);
    sobel(fused, gf, of);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < gf.data.size(); ++i) {
        const double qa = preservation(ga.data[i], oa.data[i], gf.data[i], of.data[i]);
        const double qb = preservation(gb.data[i], ob.data[i], gf.data[i], of.data[i]);
        num += qa * ga.data[i] + qb * gb.data[i];
        den += ga.data[i] + gb.data[i];
    }
    return den < 1e-12 ? 0.0 : num / den;
}

double q_s(const GrayImage& fused, const GrayImage& a, const GrayImage& b) {
    require_same_size(fused, a, "q_s");
    require_same_size(fused, b, "q_s");
    constexpr int kWin = 8;
    check_min_dims(fused, kWin, kWin, "q_s");
    const int n = kWin * kWin;

    double total = 0.0;
    size_t windows = 0;
    for (int y0 = 0; y0 + kWin <= fused.height; ++y0)
        for (int x0 = 0; x0 + kWin <= fused.width; ++x0) {
            double sa = 0, sb = 0, sf = 0, saa = 0, sbb = 0, sff = 0, saf = 0, sbf = 0;
            for (int y = y0; y < y0 + kWin; ++y)
                for (int x = x0; x < x0 + kWin; ++x) {
                    const double va = a.at(x, y), vb = b.at(x, y), vf = fused.at(x, y);
                    sa += va; sb += vb; sf += vf;
                    saa += va * va; sbb += vb * vb; sff += vf * vf;
                    saf += va * vf; sbf += vb * vf;
                }
            const double mu_a = sa / n, mu_b = sb / n, mu_f = sf / n;
            const double var_a = saa / n - mu_a * mu_a;
            const double var_b = sbb / n - mu_b * mu_b;
            const double var_f = sff / n - mu_f * mu_f;
            const double cov_af = saf / n - mu_a * mu_f;
            const double cov_bf = sbf / n - mu_b * mu_f;
            const double lam = var_a + var_b > 1e-12 ? var_a / (var_a + var_b) : 0.5;
            total += lam * uiqi(mu_a, mu_f, var_a, var_f, cov_af) +
                     (1.0 - lam) * uiqi(mu_b, mu_f, var_b, var_f, cov_bf);
            ++windows;
        }
    const double score = total / static_cast<double>(windows);
    return score < 0.0 ? 0.0 : (score > 1.0 ? 1.0 : score);
}

double q_m(const GrayImage& fused, const GrayImage& a, const GrayImage& b) {
    require_same_size(fused, a, "q_m");
    require_same_size(fused, b, "q_m");
    check_min_dims(fused, 4, 4, "q_m");

    GrayImage fp = mirror_pad_to_multiple(fused, 4);
    GrayImage ap = mirror_pad_to_multiple(a, 4);
    GrayImage bp = mirror_pad_to_multiple(b, 4);

    constexpr double kLevelWeight[2] = {2.0 / 3.0, 1.0 / 3.0};
    double score = 0.0;
    for (int level = 0; level < 2; ++level) {
        HaarBands hf = haar_level(fp);
        HaarBands ha = haar_level(ap);
        HaarBands hb = haar_level(bp);
        double level_sum = 0.0;
        const GrayImage* srcs[3][2] = {{&ha.lh, &hb.lh}, {&ha.hl, &hb.hl}, {&ha.hh, &hb.hh}};
        const GrayImage* fubs[3] = {&hf.lh, &hf.hl, &hf.hh};
        for (int band = 0; band < 3; ++band) {
            double num = 0.0, den = 0.0;
            band_accumulate(*srcs[band][0], *fubs[band], num, den);
            band_accumulate(*srcs[band][1], *fubs[band], num, den);
            level_sum += den < 1e-12 ? 0.0 : num / den;
        }
        score += kLevelWeight[level] * level_sum / 3.0;
        fp = std::move(hf.ll);
        ap = std::move(ha.ll);
        bp = std::move(hb.ll);
    }
    return score;
}

FusionReport evaluate_pair(const std::string& id, const GrayImage& fused, const GrayImage& a,
                           const GrayImage& b) {
    FusionReport r;
    r.id = id;
    r.q_g = q_g(fused, a, b);
    r.q_m = q_m(fused, a, b);
    r.q_s = q_s(fused, a, b);
    r.ag = avg_gradient(fused);
    r.sf = spatial_frequency(fused);
    r.psnr = psnr_fusion(fused, {a, b});
    return r;
}

}  // namespace ff

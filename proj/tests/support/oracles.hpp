#pragma once

// Independent brute-force reference implementations used to check the
// library. Everything here is written directly from the definitions with
// plain nested loops and must stay free of the production code paths it
// verifies (only the GrayImage container is shared).

#include <array>
#include <cmath>
#include <vector>

#include "focusfuse/image.hpp"

namespace oracle {

inline int mirror(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

// ------------------------------------------------------------ convolution

inline ff::GrayImage conv2d(const ff::GrayImage& img, const std::vector<double>& taps, int kw,
                            int kh, int ax, int ay) {
    ff::GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double s = 0.0;
            for (int j = 0; j < kh; ++j)
                for (int i = 0; i < kw; ++i)
                    s += taps[static_cast<size_t>(j) * kw + i] *
                         img.at(mirror(x + i - ax, img.width), mirror(y + j - ay, img.height));
            out.at(x, y) = s;
        }
    return out;
}

// --------------------------------------------------- Eq. 1 energy oracle
//
// ||u - z.f||^2 + alpha ||D1 u - D1(z.f)||^2 + lambda * nnz(D2 u)
// with forward differences (zero at the mirrored edge) and the second
// differences (xx, yy, xy) counted as nonzero where |d| > nnz_eps.

struct Eq1Energy {
    double fidelity = 0.0;
    double gradient = 0.0;
    size_t l0_count = 0;
    double total(double alpha, double lambda) const {
        return fidelity + alpha * gradient + lambda * static_cast<double>(l0_count);
    }
};

inline Eq1Energy eq1_energy(const ff::GrayImage& u, const ff::GrayImage& f,
                            const ff::GrayImage* z, double nnz_eps = 1e-4) {
    const int w = u.width, h = u.height;
    Eq1Energy e;
    auto zf = [&](int x, int y) {
        const double zz = z && !z->empty() ? z->at(x, y) : 1.0;
        return zz * f.at(x, y);
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double d = u.at(x, y) - zf(x, y);
            e.fidelity += d * d;
            if (x < w - 1) {
                const double gu = u.at(x + 1, y) - u.at(x, y);
                const double gv = zf(x + 1, y) - zf(x, y);
                e.gradient += (gu - gv) * (gu - gv);
            }
            if (y < h - 1) {
                const double gu = u.at(x, y + 1) - u.at(x, y);
                const double gv = zf(x, y + 1) - zf(x, y);
                e.gradient += (gu - gv) * (gu - gv);
            }
            // second differences, mirrored ends
            const int xm = x > 0 ? x - 1 : 0, xp = x < w - 1 ? x + 1 : w - 1;
            const int ym = y > 0 ? y - 1 : 0, yp = y < h - 1 ? y + 1 : h - 1;
            const double dxx = u.at(xm, y) - 2.0 * u.at(x, y) + u.at(xp, y);
            const double dyy = u.at(x, ym) - 2.0 * u.at(x, y) + u.at(x, yp);
            double dxy = 0.0;
            if (x < w - 1 && y < h - 1)
                dxy = u.at(x + 1, y + 1) - u.at(x, y + 1) - (u.at(x + 1, y) - u.at(x, y));
            if (std::fabs(dxx) > nnz_eps) ++e.l0_count;
            if (std::fabs(dyy) > nnz_eps) ++e.l0_count;
            if (std::fabs(dxy) > nnz_eps) ++e.l0_count;
        }
    return e;
}

// ------------------------------------------------ local spatial frequency

inline double local_sf_at(const ff::GrayImage& img, int cx, int cy, int window) {
    const int r = window / 2;
    double rf = 0.0, cf = 0.0;
    int n = 0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            const int x = mirror(cx + dx, img.width);
            const int y = mirror(cy + dy, img.height);
            const double dh = img.at(mirror(x + 1, img.width), y) - img.at(x, y);
            const double dv = img.at(x, mirror(y + 1, img.height)) - img.at(x, y);
            rf += dh * dh;
            cf += dv * dv;
            ++n;
        }
    return std::sqrt(rf / n + cf / n);
}

// ------------------------------------------------------------ 3x3 DCT-II

inline std::array<double, 9> dct3(const std::array<double, 9>& a) {
    constexpr double kPi = 3.14159265358979323846;
    std::array<double, 9> out{};
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) {
            const double au = u == 0 ? std::sqrt(1.0 / 3.0) : std::sqrt(2.0 / 3.0);
            const double av = v == 0 ? std::sqrt(1.0 / 3.0) : std::sqrt(2.0 / 3.0);
            double s = 0.0;
            for (int y = 0; y < 3; ++y)
                for (int x = 0; x < 3; ++x)
                    s += a[static_cast<size_t>(y) * 3 + x] *
                         std::cos(kPi * (2 * y + 1) * u / 6.0) *
                         std::cos(kPi * (2 * x + 1) * v / 6.0);
            out[static_cast<size_t>(u) * 3 + v] = au * av * s;
        }
    return out;
}

// ------------------------------------------------------------ metrics

inline double avg_gradient(const ff::GrayImage& f) {
    double s = 0.0;
    for (int y = 0; y + 1 < f.height; ++y)
        for (int x = 0; x + 1 < f.width; ++x) {
            const double dx = 255.0 * (f.at(x + 1, y) - f.at(x, y));
            const double dy = 255.0 * (f.at(x, y + 1) - f.at(x, y));
            s += std::sqrt(0.5 * (dx * dx + dy * dy));
        }
    return s / ((f.width - 1.0) * (f.height - 1.0));
}

inline double spatial_frequency(const ff::GrayImage& f) {
    double rf = 0.0, cf = 0.0;
    for (int y = 0; y < f.height; ++y)
        for (int x = 1; x < f.width; ++x)
            rf += 65025.0 * (f.at(x, y) - f.at(x - 1, y)) * (f.at(x, y) - f.at(x - 1, y));
    for (int y = 1; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            cf += 65025.0 * (f.at(x, y) - f.at(x, y - 1)) * (f.at(x, y) - f.at(x, y - 1));
    return std::sqrt(rf / (f.height * (f.width - 1.0)) + cf / ((f.height - 1.0) * f.width));
}

inline double psnr_single(const ff::GrayImage& fused, const ff::GrayImage& src) {
    double mse = 0.0;
    for (size_t i = 0; i < fused.data.size(); ++i) {
        const double d = 255.0 * (fused.data[i] - src.data[i]);
        mse += d * d;
    }
    mse /= static_cast<double>(fused.data.size());
    if (mse <= 0.0) return 100.0;
    return std::min(100.0, 10.0 * std::log10(65025.0 / mse));
}

// Piella Q_S recomputed window by window straight from the definition.
inline double piella_qs(const ff::GrayImage& fused, const ff::GrayImage& a,
                        const ff::GrayImage& b) {
    auto q0 = [](const std::vector<double>& x, const std::vector<double>& y) {
        const double n = static_cast<double>(x.size());
        double mx = 0, my = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= n;
        my /= n;
        double vx = 0, vy = 0, cov = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            vx += (x[i] - mx) * (x[i] - mx);
            vy += (y[i] - my) * (y[i] - my);
            cov += (x[i] - mx) * (y[i] - my);
        }
        vx /= n;
        vy /= n;
        cov /= n;
        const double d1 = vx + vy, d2 = mx * mx + my * my;
        if (d1 > 1e-12 && d2 > 1e-12) return 4.0 * cov * mx * my / (d1 * d2);
        if (d1 <= 1e-12 && d2 > 1e-12) return 2.0 * mx * my / d2;
        return 1.0;
    };
    double total = 0.0;
    int count = 0;
    for (int y0 = 0; y0 + 8 <= fused.height; ++y0)
        for (int x0 = 0; x0 + 8 <= fused.width; ++x0) {
            std::vector<double> wa, wb, wf;
            for (int y = y0; y < y0 + 8; ++y)
                for (int x = x0; x < x0 + 8; ++x) {
                    wa.push_back(a.at(x, y));
                    wb.push_back(b.at(x, y));
                    wf.push_back(fused.at(x, y));
                }
            double ma = 0, mb = 0;
            for (double v : wa) ma += v;
            for (double v : wb) mb += v;
            ma /= 64.0;
            mb /= 64.0;
            double va = 0, vb = 0;
            for (double v : wa) va += (v - ma) * (v - ma);
            for (double v : wb) vb += (v - mb) * (v - mb);
            va /= 64.0;
            vb /= 64.0;
            const double lam = va + vb > 1e-12 ? va / (va + vb) : 0.5;
            total += lam * q0(wa, wf) + (1.0 - lam) * q0(wb, wf);
            ++count;
        }
    double s = total / count;
    return s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
}

// Normalized Gaussian tap, for checking blur kernels sample by sample.
inline std::vector<double> gaussian_taps(double sigma) {
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(2 * r + 1);
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        taps[i + r] = std::exp(-0.5 * i * i / (sigma * sigma));
        sum += taps[i + r];
    }
    for (double& t : taps) t /= sum;
    return taps;
}

}  // namespace oracle

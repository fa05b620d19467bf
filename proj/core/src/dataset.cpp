#include "focusfuse/dataset.hpp"

#include <cmath>
#include <vector>

#include "focusfuse/raster.hpp"

namespace ff {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;  // xorshift state must be nonzero
}

uint64_t Rng::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
}

double Rng::next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

uint64_t Rng::next_below(uint64_t n) { return n == 0 ? 0 : next() % n; }

const char* mask_shape_name(MaskShape s) {
    switch (s) {
        case MaskShape::HalfPlane: return "half_plane";
        case MaskShape::Rect: return "rect";
        case MaskShape::Ellipse: return "ellipse";
        case MaskShape::PolyBlob: return "poly_blob";
    }
    return "unknown";
}

namespace {

constexpr double kPi = 3.14159265358979323846;

double area_frac(const BinaryMask& m) {
    return static_cast<double>(m.count_ones()) / static_cast<double>(m.pixel_count());
}

// Half-plane through offset d along unit normal (nx, ny); the offset is
// binary-searched so the pixel-count fraction lands on the sampled target.
BinaryMask raster_half_plane(int w, int h, Rng& rng, double frac_lo, double frac_hi) {
    const double theta = 2.0 * kPi * rng.next_double();
    const double nx = std::cos(theta), ny = std::sin(theta);
    // keep the target a tenth of the range away from either bound so the
    // pixel-count quantization of the search cannot cross it
    const double target = frac_lo + (frac_hi - frac_lo) * (0.1 + 0.8 * rng.next_double());

    auto count_at = [&](double d) {
        size_t c = 0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                if (nx * (x + 0.5) + ny * (y + 0.5) >= d) ++c;
        return static_cast<double>(c) / (static_cast<double>(w) * h);
    };
    double lo = -(std::fabs(nx) * w + std::fabs(ny) * h);
    double hi = -lo;
    for (int it = 0; it < 48; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_at(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    const double d = 0.5 * (lo + hi);
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) m.at(x, y) = nx * (x + 0.5) + ny * (y + 0.5) >= d ? 1 : 0;
    return m;
}

BinaryMask raster_rect(int w, int h, Rng& rng) {
    const double target = 0.25 + 0.5 * rng.next_double();
    const double aspect = std::exp(std::log(0.5) + rng.next_double() * std::log(4.0));
    double wf = std::min(0.95, std::sqrt(target * aspect));
    double hf = std::min(0.95, target / wf);
    const double cx = wf / 2 + (1.0 - wf) * rng.next_double();
    const double cy = hf / 2 + (1.0 - hf) * rng.next_double();
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double px = (x + 0.5) / w, py = (y + 0.5) / h;
            m.at(x, y) = std::fabs(px - cx) <= wf / 2 && std::fabs(py - cy) <= hf / 2 ? 1 : 0;
        }
    return m;
}

BinaryMask raster_ellipse(int w, int h, Rng& rng) {
    const double target = 0.25 + 0.5 * rng.next_double();
    const double ratio = std::exp(std::log(0.5) + rng.next_double() * std::log(4.0));
    const double total = static_cast<double>(w) * h;
    double a = std::sqrt(target * total / (kPi * ratio));  // semi-axes in pixels
    double b = ratio * a;
    a = std::min(a, 0.48 * w);
    b = std::min(b, 0.48 * h);
    const double cx = a + (w - 2 * a) * rng.next_double();
    const double cy = b + (h - 2 * b) * rng.next_double();
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double dx = (x + 0.5 - cx) / a, dy = (y + 0.5 - cy) / b;
            m.at(x, y) = dx * dx + dy * dy <= 1.0 ? 1 : 0;
        }
    return m;
}

// Star-shaped polygon: vertices at jittered angles with varying radii around
// a central point, rasterized with the even-odd crossing rule.
BinaryMask raster_poly_blob(int w, int h, Rng& rng) {
    const int k = 5 + static_cast<int>(rng.next_below(8));
    const double cx = (0.35 + 0.3 * rng.next_double()) * w;
    const double cy = (0.35 + 0.3 * rng.next_double()) * h;
    const double rbase = (0.25 + 0.2 * rng.next_double()) * std::min(w, h);

    std::vector<double> vx(k), vy(k);
    for (int i = 0; i < k; ++i) {
        const double ang = 2.0 * kPi * (i + 0.4 * rng.next_double()) / k;
        const double rad = rbase * (0.6 + 0.8 * rng.next_double());
        vx[i] = cx + rad * std::cos(ang);
        vy[i] = cy + rad * std::sin(ang);
    }
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double px = x + 0.5, py = y + 0.5;
            bool inside = false;
            for (int i = 0, j = k - 1; i < k; j = i++) {
                if ((vy[i] > py) != (vy[j] > py) &&
                    px < (vx[j] - vx[i]) * (py - vy[i]) / (vy[j] - vy[i]) + vx[i])
                    inside = !inside;
            }
            m.at(x, y) = inside ? 1 : 0;
        }
    return m;
}

}  // namespace

MaskPair gen_mask_pair(int width, int height, const MaskSpec& spec) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("gen_mask_pair: dimensions must be positive");
    if (!(spec.min_area_frac >= 0.0 && spec.max_area_frac <= 1.0 &&
          spec.min_area_frac < spec.max_area_frac))
        throw std::invalid_argument("gen_mask_pair: bad area bounds");

    Rng rng(spec.seed);
    const MaskShape shape =
        spec.shape ? *spec.shape : static_cast<MaskShape>(rng.next_below(4));

    MaskPair pair;
    pair.shape = shape;
    for (int attempt = 0; attempt < 16; ++attempt) {
        BinaryMask m;
        switch (shape) {
            case MaskShape::HalfPlane:
                m = raster_half_plane(width, height, rng, spec.min_area_frac, spec.max_area_frac);
                break;
            case MaskShape::Rect: m = raster_rect(width, height, rng); break;
            case MaskShape::Ellipse: m = raster_ellipse(width, height, rng); break;
            case MaskShape::PolyBlob: m = raster_poly_blob(width, height, rng); break;
        }
        const double frac = area_frac(m);
        if (frac >= spec.min_area_frac && frac <= spec.max_area_frac) {
            pair.m1 = std::move(m);
            pair.m2 = pair.m1.complement();
            pair.area_frac = frac;
            return pair;
        }
    }
    // guaranteed fallback: a half plane hits any interior target fraction
    pair.shape = MaskShape::HalfPlane;
    pair.m1 = raster_half_plane(width, height, rng, spec.min_area_frac, spec.max_area_frac);
    pair.m2 = pair.m1.complement();
    pair.area_frac = area_frac(pair.m1);
    return pair;
}

DefocusPair simulate_defocus(const GrayImage& f_clear, const BinaryMask& m1, const BinaryMask& m2,
                             double sigma) {
    if (f_clear.empty()) throw std::invalid_argument("simulate_defocus: empty image");
    if (m1.width != f_clear.width || m1.height != f_clear.height || !m1.same_size(m2))
        throw std::invalid_argument("simulate_defocus: mask size mismatch");
    for (size_t i = 0; i < m1.data.size(); ++i)
        if ((m1.data[i] ^ m2.data[i]) != 1)
            throw std::invalid_argument("simulate_defocus: masks are not complementary");
    if (!(sigma > 0.0)) throw std::invalid_argument("simulate_defocus: sigma must be positive");

    GrayImage f_blur = gaussian_blur(f_clear, sigma);
    DefocusPair out;
    out.f1 = select(f_clear, f_blur, m1);
    out.f2 = select(f_clear, f_blur, m2);
    return out;
}

}  // namespace ff

#include "focusfuse/structure_fusion.hpp"

#include <cmath>
#include <vector>

#include "focusfuse/raster.hpp"

namespace ff {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Orthonormal DCT-II basis matrix for size n: C(u,x) = a_u cos(pi (2x+1) u / 2n).
std::vector<double> dct_basis(int n) {
    std::vector<double> c(static_cast<size_t>(n) * n);
    for (int u = 0; u < n; ++u) {
        const double a = u == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
        for (int x = 0; x < n; ++x)
            c[static_cast<size_t>(u) * n + x] = a * std::cos(kPi * (2 * x + 1) * u / (2.0 * n));
    }
    return c;
}

// B = C A C' for row-major n x n block A.
void dct_block(const std::vector<double>& c, int n, const double* in, double* out) {
    std::vector<double> tmp(static_cast<size_t>(n) * n, 0.0);
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += c[static_cast<size_t>(u) * n + k] * in[k * n + x];
            tmp[static_cast<size_t>(u) * n + x] = s;
        }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += tmp[static_cast<size_t>(u) * n + k] * c[static_cast<size_t>(v) * n + k];
            out[u * n + v] = s;
        }
}

double population_std(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

// Directional AC groups of an n x n DCT block: 0 deg = top row, 90 deg =
// first column, 45 deg = main diagonal, 135 deg = remaining mixed terms.
// For n = 3 these are {(0,1),(0,2)}, {(1,0),(2,0)}, {(1,1),(2,2)},
// {(1,2),(2,1)}.
std::array<std::vector<double>, 4> directional_groups(const double* coeffs, int n) {
    std::array<std::vector<double>, 4> g;
    for (int i = 1; i < n; ++i) {
        g[0].push_back(coeffs[0 * n + i]);
        g[1].push_back(coeffs[i * n + 0]);
        g[2].push_back(coeffs[i * n + i]);
    }
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            if (i != j) g[3].push_back(coeffs[i * n + j]);
    return g;
}

}  // namespace

std::array<double, 9> dct3(const std::array<double, 9>& block) {
    static const std::vector<double> basis = dct_basis(3);
    std::array<double, 9> out{};
    dct_block(basis, 3, block.data(), out.data());
    return out;
}

std::array<double, 9> idct3(const std::array<double, 9>& coeffs) {
    static const std::vector<double> basis = dct_basis(3);
    // A = C' B C, i.e. the forward transform with the transposed basis
    std::vector<double> ct(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ct[static_cast<size_t>(i) * 3 + j] = basis[static_cast<size_t>(j) * 3 + i];
    std::array<double, 9> out{};
    dct_block(ct, 3, coeffs.data(), out.data());
    return out;
}

double freq_variance(const GrayImage& s, int block) {
    if (block < 2) throw std::invalid_argument("freq_variance: block must be at least 2");
    if (s.width < block || s.height < block)
        throw std::invalid_argument("freq_variance: image smaller than one " +
                                    std::to_string(block) + "x" + std::to_string(block) + " block");

    const std::vector<double> basis = dct_basis(block);
    std::vector<double> pixels(static_cast<size_t>(block) * block);
    std::vector<double> coeffs(pixels.size());

    const int bx = s.width / block, by = s.height / block;
    double sum = 0.0;
    for (int j = 0; j < by; ++j)
        for (int i = 0; i < bx; ++i) {
            for (int y = 0; y < block; ++y)
                for (int x = 0; x < block; ++x)
                    pixels[static_cast<size_t>(y) * block + x] = s.at(i * block + x, j * block + y);
            dct_block(basis, block, pixels.data(), coeffs.data());

            auto groups = directional_groups(coeffs.data(), block);
            std::array<double, 4> sigma{};
            double phi = 0.0;
            for (int d = 0; d < 4; ++d) {
                sigma[d] = population_std(groups[d]);
                phi += sigma[d];
            }
            phi /= 4.0;
            if (phi < 1e-12) continue;  // flat block contributes 0
            double m = 0.0;
            for (double v : sigma) m += v / phi;
            m /= 4.0;
            double var = 0.0;
            for (double v : sigma) var += (v / phi - m) * (v / phi - m);
            sum += var / 4.0;
        }
    return sum / (static_cast<double>(bx) * by);
}

GrayImage fuse_structure(const std::vector<GrayImage>& structures, int block,
                         std::vector<StructureFeatures>* features) {
    if (structures.empty()) throw std::invalid_argument("fuse_structure: no inputs");
    const size_t n = structures.size();
    for (size_t m = 1; m < n; ++m) require_same_size(structures[0], structures[m], "fuse_structure");

    std::vector<StructureFeatures> feats(n);
    double k_sum = 0.0;
    for (size_t m = 0; m < n; ++m) {
        feats[m].psi = freq_variance(structures[m], block);
        feats[m].entropy_e = entropy(structures[m]);
        k_sum += feats[m].entropy_e * feats[m].psi;
    }
    for (size_t m = 0; m < n; ++m)
        feats[m].weight = k_sum < 1e-12 ? 1.0 / static_cast<double>(n)
                                        : feats[m].entropy_e * feats[m].psi / k_sum;

    GrayImage out(structures[0].width, structures[0].height, 0.0);
    for (size_t m = 0; m < n; ++m)
        for (size_t i = 0; i < out.data.size(); ++i)
            out.data[i] += feats[m].weight * structures[m].data[i];

    if (features) *features = std::move(feats);
    return out;
}

}  // namespace ff

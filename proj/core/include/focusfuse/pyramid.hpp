#pragma once

#include "focusfuse/image.hpp"

namespace ff {

/// Gaussian levels G_0..G_N plus Laplacian levels L_0..L_{N-1} with
/// L_l = G_l - upsample2(G_{l+1}). Folding the Laplacians back reproduces
/// G_0 exactly.
struct PyramidStack {
    std::vector<GrayImage> gaussian;   // N + 1 images, gaussian[0] is the source
    std::vector<GrayImage> laplacian;  // N images
    int levels_n = 0;
};

/// Decompose into levels_n scales. Requires min(width, height) / 2^levels_n >= 4.
PyramidStack build_pyramid(const GrayImage& img, int levels_n);

/// Reconstruct G_0 from the coarsest Gaussian and the Laplacian chain.
GrayImage collapse_pyramid(const PyramidStack& pyr);

}  // namespace ff

#pragma once

#include "focusfuse/image.hpp"

namespace ff {

/// Configuration of the semi-sparsity smoothing filter.
///
/// The filter minimizes
///   ||u - Zf||^2 + alpha ||D1 u - D1(Zf)||^2 + lambda ||D2 u||_0
/// with first differences D1 and the stacked second differences D2
/// (xx, yy, and the mixed term weighted so the quadratic form matches the
/// Hessian Frobenius norm). confidence_z is a per-pixel weight in (0,1]
/// applied to f; empty means uniform confidence.
struct SsfParams {
    double alpha = 0.8;
    double lambda = 0.05;
    int order_n = 2;           // highest regularization order; only 2 is implemented
    GrayImage confidence_z;    // empty = all ones
    double beta0 = 0.1;        // <= 0 selects 2 * lambda
    double beta_mult = 2.0;
    double beta_max = 1e5;
    double inner_tol = 1e-4;
    int max_outer_iters = 30;

    void validate() const;
};

/// Semi-sparsity filter u = SSF(f): half-quadratic splitting with
/// beta-continuation. Each outer iteration hard-thresholds the stacked
/// second differences of u (keep where |d|^2 > lambda/beta) and solves
///   (Id + alpha D1'D1 + beta D2'D2) u = Zf + alpha D1'D1(Zf) + beta D2' g
/// exactly in the mirror-boundary DCT basis; CG refinement is the fallback
/// when the direct solve misses inner_tol.
GrayImage ssf_smooth(const GrayImage& f, const SsfParams& params = {});

struct Decomposition {
    GrayImage structure;
    GrayImage texture;  // f - structure; signed
};

/// Split f into a smoothed structure layer and its residual texture.
/// structure + texture reproduces f exactly.
Decomposition decompose(const GrayImage& f, const SsfParams& params = {});

}  // namespace ff

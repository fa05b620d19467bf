#include "focusfuse/ssf.hpp"

#include <cmath>

#include "focusfuse/diffops.hpp"

namespace ff {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

GrayImage apply_confidence(const GrayImage& f, const GrayImage& z) {
    if (z.empty()) return f;
    require_same_size(f, z, "ssf_smooth confidence map");
    for (double v : z.data)
        if (!(v > 0.0 && v <= 1.0))
            throw std::invalid_argument("ssf_smooth: confidence weights must lie in (0,1]");
    return multiply(z, f);
}

}  // namespace

void SsfParams::validate() const {
    if (!(alpha >= 0.0)) throw std::invalid_argument("ssf: alpha must be nonnegative");
    if (!(lambda >= 0.0)) throw std::invalid_argument("ssf: lambda must be nonnegative");
    if (order_n != 2) throw std::invalid_argument("ssf: only order_n = 2 is implemented");
    if (!(beta_mult > 1.0)) throw std::invalid_argument("ssf: beta_mult must exceed 1");
    if (!(beta_max > 0.0)) throw std::invalid_argument("ssf: beta_max must be positive");
    if (!(inner_tol > 0.0)) throw std::invalid_argument("ssf: inner_tol must be positive");
    if (max_outer_iters < 1) throw std::invalid_argument("ssf: max_outer_iters must be positive");
}

GrayImage ssf_smooth(const GrayImage& f, const SsfParams& params) {
    if (f.empty()) throw std::invalid_argument("ssf_smooth: empty image");
    params.validate();

    GrayImage v = apply_confidence(f, params.confidence_z);
    // lambda = 0 removes the L0 term; the remaining quadratic is minimized by u = Zf.
    if (params.lambda == 0.0) return v;

    const double alpha = params.alpha;
    // fixed part of the right-hand side: Zf + alpha D1'D1 (Zf)
    GrayImage rhs_fixed = v;
    if (alpha > 0.0) {
        GrayImage lap_v = neumann_laplacian(v);
        for (size_t i = 0; i < rhs_fixed.data.size(); ++i)
            rhs_fixed.data[i] += alpha * lap_v.data[i];
    }

    GrayImage u = v;
    double beta = params.beta0 > 0.0 ? params.beta0 : 2.0 * params.lambda;
    int outer = 0;
    // the DCT solve is exact; CG only runs if the measured residual misses tol
    const int cg_cap = 10 * 500;

    while (beta <= params.beta_max && outer < params.max_outer_iters) {
        GrayImage gxx = second_diff_xx(u);
        GrayImage gyy = second_diff_yy(u);
        GrayImage gxy = scale(second_diff_xy(u), kSqrt2);

        const double thresh = params.lambda / beta;
        for (GrayImage* g : {&gxx, &gyy, &gxy})
            for (double& d : g->data)
                if (d * d <= thresh) d = 0.0;

        GrayImage d2t = add(add(second_diff_xx(gxx), second_diff_yy(gyy)),
                            scale(second_diff_xy_adjoint(gxy), kSqrt2));
        GrayImage rhs = rhs_fixed;
        for (size_t i = 0; i < rhs.data.size(); ++i) rhs.data[i] += beta * d2t.data[i];

        u = solve_screened_biharmonic_dct(rhs, alpha, beta);
        if (screened_biharmonic_residual(u, rhs, alpha, beta) > params.inner_tol)
            u = solve_screened_biharmonic_cg(rhs, alpha, beta, params.inner_tol, cg_cap, &u);

        beta *= params.beta_mult;
        ++outer;
    }
    return u;
}

Decomposition decompose(const GrayImage& f, const SsfParams& params) {
    Decomposition d;
    d.structure = ssf_smooth(f, params);
    d.texture = subtract(f, d.structure);
    return d;
}

}  // namespace ff

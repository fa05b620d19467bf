#pragma once

#include "focusfuse/image.hpp"

namespace ff {

// Discrete difference operators with symmetric (mirror) boundaries, plus the
// screened-biharmonic solves built from them. The forward differences treat
// the out-of-range neighbor as the edge sample, so the last difference along
// an axis is zero; adjoints are the exact matrix transposes.

/// out(x,y) = u(x+1,y) - u(x,y); zero in the last column.
GrayImage diff_x(const GrayImage& u);
/// out(x,y) = u(x,y+1) - u(x,y); zero in the last row.
GrayImage diff_y(const GrayImage& u);
GrayImage diff_x_adjoint(const GrayImage& v);
GrayImage diff_y_adjoint(const GrayImage& v);

/// Neumann Laplacian-type operator diff_x_adjoint(diff_x(u)) + the y analog.
/// Positive semidefinite; constants are in its null space.
GrayImage neumann_laplacian(const GrayImage& u);

/// Symmetric second differences u(x-1) - 2u(x) + u(x+1) with mirrored ends
/// (equal to minus the per-axis Neumann Laplacian; self-adjoint).
GrayImage second_diff_xx(const GrayImage& u);
GrayImage second_diff_yy(const GrayImage& u);
/// Mixed difference diff_y(diff_x(u)); adjoint is diff_x_adjoint(diff_y_adjoint(v)).
GrayImage second_diff_xy(const GrayImage& u);
GrayImage second_diff_xy_adjoint(const GrayImage& v);

/// A u = u + alpha * Lap u + beta * Lap^2 u, where Lap is the Neumann
/// Laplacian above. Equals Id + alpha D1'D1 + beta D2'D2 for the stacked
/// second-difference operator D2 = (xx, yy, sqrt(2) xy).
GrayImage apply_screened_biharmonic(const GrayImage& u, double alpha, double beta);

/// Exact solve of apply_screened_biharmonic(u) = rhs via 2-D DCT-II
/// diagonalization (the mirror-boundary eigenbasis of the Laplacian).
GrayImage solve_screened_biharmonic_dct(const GrayImage& rhs, double alpha, double beta);

/// Conjugate-gradient solve of the same system to the given relative
/// residual. Throws after max_iters without convergence.
GrayImage solve_screened_biharmonic_cg(const GrayImage& rhs, double alpha, double beta,
                                       double rel_tol, int max_iters,
                                       const GrayImage* initial = nullptr);

/// ||A u - rhs|| / ||rhs|| (absolute norm if rhs is zero).
double screened_biharmonic_residual(const GrayImage& u, const GrayImage& rhs, double alpha,
                                    double beta);

}  // namespace ff

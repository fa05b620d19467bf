#include "focusfuse/diffops.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace ff {

GrayImage diff_x(const GrayImage& u) {
    GrayImage out(u.width, u.height);
    for (int y = 0; y < u.height; ++y)
        for (int x = 0; x < u.width - 1; ++x) out.at(x, y) = u.at(x + 1, y) - u.at(x, y);
    return out;
}

GrayImage diff_y(const GrayImage& u) {
    GrayImage out(u.width, u.height);
    for (int y = 0; y < u.height - 1; ++y)
        for (int x = 0; x < u.width; ++x) out.at(x, y) = u.at(x, y + 1) - u.at(x, y);
    return out;
}

GrayImage diff_x_adjoint(const GrayImage& v) {
    GrayImage out(v.width, v.height);
    for (int y = 0; y < v.height; ++y)
        for (int x = 0; x < v.width; ++x) {
            double s = 0.0;
            if (x >= 1) s += v.at(x - 1, y);
            if (x < v.width - 1) s -= v.at(x, y);
            out.at(x, y) = s;
        }
    return out;
}

GrayImage diff_y_adjoint(const GrayImage& v) {
    GrayImage out(v.width, v.height);
    for (int y = 0; y < v.height; ++y)
        for (int x = 0; x < v.width; ++x) {
            double s = 0.0;
            if (y >= 1) s += v.at(x, y - 1);
            if (y < v.height - 1) s -= v.at(x, y);
            out.at(x, y) = s;
        }
    return out;
}

GrayImage neumann_laplacian(const GrayImage& u) {
    GrayImage out(u.width, u.height);
    const int w = u.width, h = u.height;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double c = u.at(x, y);
            double s = 0.0;
            if (x > 0) s += c - u.at(x - 1, y);
            if (x < w - 1) s += c - u.at(x + 1, y);
            if (y > 0) s += c - u.at(x, y - 1);
            if (y < h - 1) s += c - u.at(x, y + 1);
            out.at(x, y) = s;
        }
    return out;
}

GrayImage second_diff_xx(const GrayImage& u) {
    GrayImage out(u.width, u.height);
    const int w = u.width;
    for (int y = 0; y < u.height; ++y)
        for (int x = 0; x < w; ++x) {
            const int xm = x > 0 ? x - 1 : 0;
            const int xp = x < w - 1 ? x + 1 : w - 1;
            out.at(x, y) = u.at(xm, y) - 2.0 * u.at(x, y) + u.at(xp, y);
        }
    return out;
}

GrayImage second_diff_yy(const GrayImage& u) {
    GrayImage out(u.width, u.height);
    const int h = u.height;
    for (int y = 0; y < h; ++y) {
        const int ym = y > 0 ? y - 1 : 0;
        const int yp = y < h - 1 ? y + 1 : h - 1;
        for (int x = 0; x < u.width; ++x)
            out.at(x, y) = u.at(x, ym) - 2.0 * u.at(x, y) + u.at(x, yp);
    }
    return out;
}

GrayImage second_diff_xy(const GrayImage& u) { return diff_y(diff_x(u)); }

GrayImage second_diff_xy_adjoint(const GrayImage& v) { return diff_x_adjoint(diff_y_adjoint(v)); }

GrayImage apply_screened_biharmonic(const GrayImage& u, double alpha, double beta) {
    GrayImage lap = neumann_laplacian(u);
    GrayImage lap2 = neumann_laplacian(lap);
    GrayImage out(u.width, u.height);
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = u.data[i] + alpha * lap.data[i] + beta * lap2.data[i];
    return out;
}

namespace {

std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

// RAII pair of in-place DCT-II / DCT-III plans on an owned buffer.
// FFTW plan creation is not thread-safe; execution on the planned buffer is.
class DctPlans {
  public:
    DctPlans(int w, int h) : w_(w), h_(h) {
        buf_ = fftw_alloc_real(static_cast<size_t>(w) * h);
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fwd_ = fftw_plan_r2r_2d(h, w, buf_, buf_, FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE);
        inv_ = fftw_plan_r2r_2d(h, w, buf_, buf_, FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE);
        if (!buf_ || !fwd_ || !inv_) throw std::runtime_error("fftw plan creation failed");
    }
    ~DctPlans() {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
        fftw_free(buf_);
    }
    DctPlans(const DctPlans&) = delete;
    DctPlans& operator=(const DctPlans&) = delete;

    double* buffer() { return buf_; }
    void forward() { fftw_execute(fwd_); }
    void inverse() { fftw_execute(inv_); }
    int width() const { return w_; }
    int height() const { return h_; }

  private:
    int w_, h_;
    double* buf_ = nullptr;
    fftw_plan fwd_ = nullptr, inv_ = nullptr;
};

}  // namespace

GrayImage solve_screened_biharmonic_dct(const GrayImage& rhs, double alpha, double beta) {
    constexpr double kPi = 3.14159265358979323846;
    const int w = rhs.width, h = rhs.height;
    DctPlans plans(w, h);
    double* buf = plans.buffer();
    for (size_t i = 0; i < rhs.data.size(); ++i) buf[i] = rhs.data[i];
    plans.forward();

    // Laplacian eigenvalues under the DCT-II basis: 4 sin^2(pi k / 2n) per axis.
    const double inv_scale = 1.0 / (4.0 * w * h);  // REDFT10 then REDFT01 scales by 4wh
    for (int ky = 0; ky < h; ++ky) {
        const double sy = 2.0 - 2.0 * std::cos(kPi * ky / h);
        for (int kx = 0; kx < w; ++kx) {
            const double s = sy + 2.0 - 2.0 * std::cos(kPi * kx / w);
            buf[static_cast<size_t>(ky) * w + kx] *= inv_scale / (1.0 + alpha * s + beta * s * s);
        }
    }
    plans.inverse();

    GrayImage u(w, h);
    for (size_t i = 0; i < u.data.size(); ++i) u.data[i] = buf[i];
    return u;
}

namespace {

double dot(const GrayImage& a, const GrayImage& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

}  // namespace

GrayImage solve_screened_biharmonic_cg(const GrayImage& rhs, double alpha, double beta,
                                       double rel_tol, int max_iters, const GrayImage* initial) {
    GrayImage u = initial ? *initial : GrayImage(rhs.width, rhs.height, 0.0);
    const double rhs_norm = std::sqrt(dot(rhs, rhs));
    const double target = rel_tol * (rhs_norm > 0.0 ? rhs_norm : 1.0);

    GrayImage r = subtract(rhs, apply_screened_biharmonic(u, alpha, beta));
    double rr = dot(r, r);
    if (std::sqrt(rr) <= target) return u;
    GrayImage p = r;
    for (int it = 0; it < max_iters; ++it) {
        GrayImage ap = apply_screened_biharmonic(p, alpha, beta);
        const double a = rr / dot(p, ap);
        for (size_t i = 0; i < u.data.size(); ++i) {
            u.data[i] += a * p.data[i];
            r.data[i] -= a * ap.data[i];
        }
        const double rr_new = dot(r, r);
        if (std::sqrt(rr_new) <= target) return u;
        const double beta_cg = rr_new / rr;
        rr = rr_new;
        for (size_t i = 0; i < p.data.size(); ++i) p.data[i] = r.data[i] + beta_cg * p.data[i];
    }
    throw std::runtime_error("conjugate gradient did not converge: relative residual " +
                             std::to_string(std::sqrt(rr) / (rhs_norm > 0.0 ? rhs_norm : 1.0)) +
                             " after " + std::to_string(max_iters) + " iterations");
}

double screened_biharmonic_residual(const GrayImage& u, const GrayImage& rhs, double alpha,
                                    double beta) {
    GrayImage r = subtract(apply_screened_biharmonic(u, alpha, beta), rhs);
    const double rn = std::sqrt(dot(r, r));
    const double bn = std::sqrt(dot(rhs, rhs));
    return bn > 0.0 ? rn / bn : rn;
}

}  // namespace ff

#include "hs/kernels.hpp"

#include <cmath>

namespace hs::kernels::scalar {

namespace {
// Re-seed the phasor recurrence from libm this often so rounding drift
// stays below ~1e-13 regardless of sequence length.
constexpr std::size_t kReseed = 256;
} // namespace

cplx dot_w(const double* w, const cplx* u, const cplx* v, std::size_t n)
{
    double acc_re = 0.0, acc_im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double ur = u[j].real(), ui = u[j].imag();
        const double vr = v[j].real(), vi = v[j].imag();
        acc_re += w[j] * (ur * vr + ui * vi);
        acc_im += w[j] * (ui * vr - ur * vi);
    }
    return {acc_re, acc_im};
}

cplx phase_sum(const cplx* f, std::size_t n, double theta0, double dtheta)
{
    const double cs = std::cos(dtheta), sn = std::sin(dtheta);
    double acc_re = 0.0, acc_im = 0.0;
    double pr = 0.0, pi = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k % kReseed == 0) {
            const double th = theta0 + static_cast<double>(k) * dtheta;
            pr = std::cos(th);
            pi = std::sin(th);
        }
        const double fr = f[k].real(), fi = f[k].imag();
        acc_re += fr * pr - fi * pi;
        acc_im += fr * pi + fi * pr;
        const double npr = pr * cs - pi * sn;
        pi = pr * sn + pi * cs;
        pr = npr;
    }
    return {acc_re, acc_im};
}

cplx phase_sum_real(const double* f, std::size_t n, double theta0, double dtheta)
{
    const double cs = std::cos(dtheta), sn = std::sin(dtheta);
    double acc_re = 0.0, acc_im = 0.0;
    double pr = 0.0, pi = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k % kReseed == 0) {
            const double th = theta0 + static_cast<double>(k) * dtheta;
            pr = std::cos(th);
            pi = std::sin(th);
        }
        acc_re += f[k] * pr;
        acc_im += f[k] * pi;
        const double npr = pr * cs - pi * sn;
        pi = pr * sn + pi * cs;
        pr = npr;
    }
    return {acc_re, acc_im};
}

void bessel_weights(double* w, std::size_t n, double xi0, double dxi, double s)
{
    for (std::size_t j = 0; j < n; ++j) {
        const double xi = xi0 + static_cast<double>(j) * dxi;
        w[j] = std::pow(1.0 + xi * xi, s);
    }
}

} // namespace hs::kernels::scalar

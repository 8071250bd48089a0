#include "hs/spectral.hpp"
#include "hs/kernels.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace hs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvSqrt2Pi = 0.3989422804014326779; // (2 pi)^{-1/2}

bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

} // namespace

SobolevOrder::SobolevOrder(double order) : s(order)
{
    if (!std::isfinite(order))
        throw invalid_parameter("SobolevOrder: s must be finite");
}

SpectralGrid make_grid(double half_width, std::size_t num_points)
{
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw invalid_parameter("make_grid: half_width must be positive and finite");
    if (num_points < 2 || !is_pow2(num_points))
        throw invalid_parameter("make_grid: num_points must be a power of two >= 2");
    return SpectralGrid{half_width, num_points};
}

SpectralGrid default_grid()
{
    return SpectralGrid{64.0, 4096};
}

GridFunction::GridFunction(double x0, double dx, std::vector<cplx> samples,
                           double support_lo, double support_hi)
    : x0_(x0), dx_(dx), samples_(std::move(samples)),
      support_lo_(support_lo), support_hi_(support_hi)
{
    if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x0))
        throw invalid_parameter("GridFunction: bad grid parameters");
    if (samples_.size() < 2)
        throw invalid_parameter("GridFunction: need at least 2 samples");
    if (!(support_lo_ <= support_hi_) || !std::isfinite(support_lo_) || !std::isfinite(support_hi_))
        throw invalid_parameter("GridFunction: bad support interval");
    const double x_end = x0_ + dx_ * static_cast<double>(samples_.size() - 1);
    if (x0_ > support_lo_ || x_end < support_hi_)
        throw invalid_parameter("GridFunction: grid does not cover the support interval");
    for (std::size_t k = 0; k < samples_.size(); ++k) {
        const double xk = x(k);
        if ((xk < support_lo_ || xk > support_hi_) && samples_[k] != cplx{0.0, 0.0})
            throw invalid_parameter("GridFunction: nonzero sample outside the support interval");
    }
}

GridFunction GridFunction::sample(double x0, double dx, std::size_t n,
                                  const std::function<cplx(double)>& f,
                                  double support_lo, double support_hi)
{
    std::vector<cplx> values(n, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        const double xk = x0 + dx * static_cast<double>(k);
        if (xk >= support_lo && xk <= support_hi)
            values[k] = f(xk);
    }
    return GridFunction(x0, dx, std::move(values), support_lo, support_hi);
}

GridFunction GridFunction::translated(double d) const
{
    return GridFunction(x0_ + d, dx_, samples_, support_lo_ + d, support_hi_ + d);
}

bool GridFunction::all_zero() const
{
    return std::all_of(samples_.begin(), samples_.end(),
                       [](const cplx& z) { return z == cplx{0.0, 0.0}; });
}

double SpectralFunction::conjugate_symmetry_defect() const
{
    const std::size_t n = values.size();
    double worst = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        const std::size_t jm = n - j; // xi_{n-j} = -xi_j
        if (jm >= n || jm == j)
            continue;
        worst = std::max(worst, std::abs(values[jm] - std::conj(values[j])));
    }
    return worst;
}

SpectralFunction fourier_transform(const GridFunction& f, const SpectralGrid& grid)
{
    if (f.dx() > std::numbers::pi / grid.half_width * (1.0 + 1e-12))
        throw resolution_error("fourier_transform: physical spacing too coarse for the "
                               "requested frequency band (need dx <= pi/half_width)");

    const std::size_t nf = grid.num_points;
    const std::size_t np = f.size();
    const double scale = f.dx() * kInvSqrt2Pi;

    SpectralFunction out{grid, std::vector<cplx>(nf)};
    for (std::size_t j = 0; j < nf; ++j) {
        const double xi = grid.xi(j);
        out.values[j] = scale * kernels::phase_sum(f.samples().data(), np,
                                                   -xi * f.x0(), -xi * f.dx());
    }
    return out;
}

QuadResult hs_inner_full(const SpectralFunction& u, const SpectralFunction& v, SobolevOrder s)
{
    if (!(u.grid == v.grid))
        throw grid_mismatch("hs_inner: operands live on different spectral grids");
    if (u.values.size() != u.grid.num_points || v.values.size() != v.grid.num_points)
        throw invalid_parameter("hs_inner: value array does not match the grid size");
    const std::size_t n = u.grid.num_points;
    const double dxi = u.grid.spacing();

    std::vector<double> w(n);
    kernels::bessel_weights(w.data(), n, -u.grid.half_width, dxi, s.s);

    const cplx total = kernels::dot_w(w.data(), u.values.data(), v.values.data(), n);
    const cplx g_first = w.front() * u.values.front() * std::conj(v.values.front());
    const cplx g_last = w.back() * u.values.back() * std::conj(v.values.back());

    QuadResult r;
    r.value = dxi * (total - 0.5 * g_first - 0.5 * g_last);
    r.tail_estimate = u.grid.half_width * (std::abs(g_first) + std::abs(g_last));
    r.tail_flagged = r.tail_estimate > 1e-10 * std::abs(r.value);
    return r;
}

cplx hs_inner(const SpectralFunction& u, const SpectralFunction& v, SobolevOrder s)
{
    return hs_inner_full(u, v, s).value;
}

double hs_norm(const SpectralFunction& u, SobolevOrder s)
{
    const double sq = hs_inner_full(u, u, s).value.real();
    return std::sqrt(std::max(sq, 0.0));
}

namespace {

std::mutex g_fftw_mutex; // FFTW planning is not thread-safe

void fft_inplace(std::vector<cplx>& data, int sign)
{
    const int n = static_cast<int>(data.size());
    fftw_complex* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        plan = fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(plan);
    }
}

} // namespace

std::vector<cplx> spectral_derivative(const GridFunction& f, int k)
{
    if (k < 0)
        throw unsupported_order("spectral_derivative: negative order");
    std::vector<cplx> data = f.samples();
    if (k == 0)
        return data;

    const std::size_t n = data.size();
    fft_inplace(data, FFTW_FORWARD);

    // FFT lattice frequencies; the kernel convention pairs with e^{-i xi x},
    // so d/dx maps to multiplication by (i xi).
    const double dxi = kTwoPi / (static_cast<double>(n) * f.dx());
    for (std::size_t j = 0; j < n; ++j) {
        double xi;
        if (2 * j < n)
            xi = dxi * static_cast<double>(j);
        else if (2 * j == n)
            xi = (k % 2 == 0) ? dxi * static_cast<double>(j) : 0.0; // Nyquist
        else
            xi = -dxi * static_cast<double>(n - j);
        cplx factor{1.0, 0.0};
        const cplx ixi{0.0, xi};
        for (int q = 0; q < k; ++q)
            factor *= ixi;
        data[j] *= factor;
    }

    fft_inplace(data, FFTW_BACKWARD);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& z : data)
        z *= inv_n;
    return data;
}

cplx physical_inner_hm(const GridFunction& f, const GridFunction& g, int m)
{
    if (m < 0 || m > 3)
        throw unsupported_order("physical_inner_hm: m must be in {0,1,2,3}");
    if (f.x0() != g.x0() || f.dx() != g.dx() || f.size() != g.size())
        throw grid_mismatch("physical_inner_hm: operands live on different physical grids");

    // binom(m, k) for m <= 3
    static const int binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

    const std::size_t n = f.size();
    cplx total{0.0, 0.0};
    for (int k = 0; k <= m; ++k) {
        const std::vector<cplx> fk = spectral_derivative(f, k);
        const std::vector<cplx> gk = spectral_derivative(g, k);
        cplx term{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            term += fk[j] * std::conj(gk[j]);
        total += static_cast<double>(binom[m][k]) * f.dx() * term;
    }
    return total;
}

} // namespace hs

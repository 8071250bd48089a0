#pragma once

#include "hs/errors.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace hs {

using cplx = std::complex<double>;

/// Exponent s of the weight (1 + xi^2)^s.
struct SobolevOrder {
    double s;

    explicit SobolevOrder(double order);
};

/// Symmetric truncated uniform frequency grid: xi_j = -half_width + j*spacing,
/// j = 0..num_points-1, spacing = 2*half_width/num_points. Symmetric about 0
/// up to the single unpaired endpoint at -half_width.
struct SpectralGrid {
    double half_width = 0.0;
    std::size_t num_points = 0;

    double spacing() const { return 2.0 * half_width / static_cast<double>(num_points); }
    double xi(std::size_t j) const { return -half_width + spacing() * static_cast<double>(j); }

    friend bool operator==(const SpectralGrid&, const SpectralGrid&) = default;
};

/// half_width > 0, num_points a power of two >= 2.
SpectralGrid make_grid(double half_width, std::size_t num_points);

/// Default quadrature grid (half_width 64, 4096 points).
SpectralGrid default_grid();

/// A compactly supported function sampled on a uniform physical grid.
/// Samples outside the support interval [support_lo, support_hi] are
/// exactly zero, and the grid covers the support with margin.
class GridFunction {
public:
    GridFunction(double x0, double dx, std::vector<cplx> samples,
                 double support_lo, double support_hi);

    /// Sample a callable; values outside [support_lo, support_hi] are forced
    /// to exact zeros.
    static GridFunction sample(double x0, double dx, std::size_t n,
                               const std::function<cplx(double)>& f,
                               double support_lo, double support_hi);

    double x0() const { return x0_; }
    double dx() const { return dx_; }
    std::size_t size() const { return samples_.size(); }
    double x(std::size_t k) const { return x0_ + dx_ * static_cast<double>(k); }
    const std::vector<cplx>& samples() const { return samples_; }
    double support_lo() const { return support_lo_; }
    double support_hi() const { return support_hi_; }
    double support_radius() const { return 0.5 * (support_hi_ - support_lo_); }

    /// Same samples re-anchored at x0 + d: represents f(. - d).
    GridFunction translated(double d) const;

    bool all_zero() const;

private:
    double x0_, dx_;
    std::vector<cplx> samples_;
    double support_lo_, support_hi_;
};

/// Values of a Fourier transform on a SpectralGrid.
struct SpectralFunction {
    SpectralGrid grid;
    std::vector<cplx> values;

    /// Max |u(-xi) - conj(u(xi))| over paired grid points (j <-> N-j).
    double conjugate_symmetry_defect() const;
};

/// One truncated-quadrature result. tail_estimate bounds the discarded
/// |integrand| mass assuming it keeps decaying at least like xi^-2 past the
/// cut; tail_flagged marks estimates above 1e-10 of the computed value.
struct QuadResult {
    cplx value;
    double tail_estimate = 0.0;
    bool tail_flagged = false;
};

/// uhat(xi) = (2 pi)^{-1/2} Integral e^{-i xi x} u(x) dx, evaluated at every
/// grid frequency by direct summation of the samples.
/// Requires dx <= pi / half_width so the band is resolved.
SpectralFunction fourier_transform(const GridFunction& f, const SpectralGrid& grid);

/// (u, v)_{H^s} = Integral (1+xi^2)^s uhat conj(vhat) dxi by composite
/// trapezoid on the shared grid.
QuadResult hs_inner_full(const SpectralFunction& u, const SpectralFunction& v, SobolevOrder s);
cplx hs_inner(const SpectralFunction& u, const SpectralFunction& v, SobolevOrder s);

/// sqrt of hs_inner(u, u, s); real nonnegative.
double hs_norm(const SpectralFunction& u, SobolevOrder s);

/// k-th derivative of the samples via multiplication by (i xi)^k on the
/// function's own FFT lattice.
std::vector<cplx> spectral_derivative(const GridFunction& f, int k);

/// Sum_{k<=m} binom(m,k) Integral f^(k) conj(g^(k)) dx with spectral
/// differentiation; m in {0,1,2,3}.
cplx physical_inner_hm(const GridFunction& f, const GridFunction& g, int m);

} // namespace hs

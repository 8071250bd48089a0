#pragma once

#include "hs/spectral.hpp"

#include <optional>

namespace hs {

/// Boundary data of a function on [a, b].
struct TraceData {
    cplx value_a{0.0, 0.0};
    cplx value_b{0.0, 0.0};
    cplx deriv_a{0.0, 0.0};
    cplx deriv_b{0.0, 0.0};
};

/// A function sampled on a uniform closed grid over [a, b] (endpoints
/// included). Traces default to one-sided 4th-order finite differences;
/// analytic traces override when supplied.
class IntervalFunction {
public:
    IntervalFunction(double a, double b, std::vector<cplx> samples,
                     std::optional<TraceData> analytic_traces = {});

    static IntervalFunction sample(double a, double b, std::size_t n,
                                   const std::function<cplx(double)>& f,
                                   std::optional<TraceData> analytic_traces = {});

    double a() const { return a_; }
    double b() const { return b_; }
    double h() const { return (b_ - a_) / static_cast<double>(samples_.size() - 1); }
    std::size_t size() const { return samples_.size(); }
    const std::vector<cplx>& samples() const { return samples_; }
    bool has_analytic_traces() const { return analytic_.has_value(); }

    /// Analytic traces when supplied, finite-difference traces otherwise.
    TraceData traces() const;

private:
    double a_, b_;
    std::vector<cplx> samples_;
    std::optional<TraceData> analytic_;
};

/// |phi(a)|^2 + |phi(b)|^2 + Integral_a^b (|phi|^2 + |phi'|^2) dx.
/// Needs at least 16 samples.
double h1_interval_norm_sq(const IntervalFunction& phi);

/// |phi(a)|^2 + |phi'(a)|^2 + |phi(a)-phi'(a)|^2
/// + |phi(b)|^2 + |phi'(b)|^2 + |phi(b)+phi'(b)|^2
/// + Integral_a^b (|phi|^2 + 2|phi'|^2 + |phi''|^2) dx.
/// Needs at least 24 samples.
double h2_interval_norm_sq(const IntervalFunction& phi);

/// Exponential-tail extension phi(a) e^{x-a} / phi(b) e^{b-x}, smoothly
/// truncated at distance `halo` (>= 10) from the interval. The returned
/// grid reuses phi's spacing with the interval endpoints on lattice nodes;
/// support is [a - halo - 1, b + halo + 1].
GridFunction h1_minimal_extension(const IntervalFunction& phi, double halo);

/// H^1(R) norm^2 of h1_minimal_extension(phi, halo) via the physical-side
/// derivative-sum quadrature. First-order accurate in phi's spacing; combine
/// two resolutions (2*fine - coarse) for a high-accuracy oracle value.
double h1_extension_norm_sq_quadrature(const IntervalFunction& phi, double halo);

/// Independent H^2 oracle: minimizes the squared H^2(R) norm over extensions
/// built from trace-preserving profiles (phi + (phi' + beta phi) t + c t^2) e^{-beta t}
/// on each side (4 free parameters), interior integral from the samples.
double h2_parametric_min_norm_sq(const IntervalFunction& phi);

} // namespace hs

#pragma once

#include "hs/spectral.hpp"

namespace hs {

/// The standard mollifier profile exp(-1/(1-t^2)) on |t| < 1, zero outside.
double mollifier(double t);

/// d/dt of the mollifier profile.
double mollifier_deriv(double t);

/// C-infinity bridge: 1 for t <= 0, 0 for t >= 1, strictly decreasing between.
double smooth_cutoff(double t);

/// amplitude * mollifier((x - center)/radius), sampled so the band
/// [-half_width, half_width] of `grid` is resolved (dx <= pi / half_width).
GridFunction bump_function(double center, double radius, const SpectralGrid& grid,
                           double amplitude = 1.0);

/// Same bump on an explicit physical grid.
GridFunction bump_function(double center, double radius, double dx, double amplitude = 1.0);

} // namespace hs

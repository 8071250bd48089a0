#include "hs/bump.hpp"

#include <cmath>
#include <numbers>

namespace hs {

double mollifier(double t)
{
    if (std::fabs(t) >= 1.0)
        return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

double mollifier_deriv(double t)
{
    if (std::fabs(t) >= 1.0)
        return 0.0;
    const double d = 1.0 - t * t;
    return mollifier(t) * (-2.0 * t / (d * d));
}

double smooth_cutoff(double t)
{
    if (t <= 0.0)
        return 1.0;
    if (t >= 1.0)
        return 0.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return b / (a + b);
}

GridFunction bump_function(double center, double radius, double dx, double amplitude)
{
    if (!(radius > 0.0))
        throw invalid_parameter("bump_function: radius must be positive");
    const double lo = center - radius;
    const double hi = center + radius;
    const double margin = std::max(0.5, 4.0 * dx);
    const double x0 = lo - margin;
    const std::size_t n = static_cast<std::size_t>(std::ceil((hi + margin - x0) / dx)) + 1;
    return GridFunction::sample(
        x0, dx, n,
        [&](double x) { return cplx{amplitude * mollifier((x - center) / radius), 0.0}; },
        lo, hi);
}

GridFunction bump_function(double center, double radius, const SpectralGrid& grid,
                           double amplitude)
{
    // keep dx a power of two below the aliasing limit so grids stay tidy
    const double limit = std::numbers::pi / grid.half_width;
    double dx = 1.0;
    while (dx > limit)
        dx *= 0.5;
    return bump_function(center, radius, dx, amplitude);
}

} // namespace hs

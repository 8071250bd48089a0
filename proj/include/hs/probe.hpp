#pragma once

#include "hs/extension.hpp"
#include "hs/spectral.hpp"

#include <string>

namespace hs {

/// Translate-correlation scan chi(d) = Integral e^{i d xi} mu(xi) dxi with
/// mu = (1+xi^2)^s |phihat|^2.
struct ChiScan {
    SobolevOrder s;
    std::vector<double> d_values;
    std::vector<cplx> chi;
    SpectralFunction mu; // the weight, real-valued, on the quadrature grid
    cplx chi0;           // chi at d = 0, i.e. ||phi||^2_{H^s}
};

/// Quadrature grid sized for chi scans up to translation distance d_max.
SpectralGrid default_probe_grid(double d_max);

ChiScan chi_scan(const GridFunction& phi, SobolevOrder s, std::vector<double> d_values,
                 const SpectralGrid& grid);

struct DichotomyRow {
    double s = 0.0;
    double chi0 = 0.0;
    double max_abs_chi = 0.0;
    double ratio = 0.0; // max_abs_chi / chi0
    std::string classification;
};

/// 64-point log-spaced d-grid on [d_min, 20 d_min].
std::vector<double> dichotomy_d_grid(double d_min);

/// Classifies each order as "orthogonal" (max <= 1e-8 chi0) or
/// "non-orthogonal" (max > 1e-4 chi0); the gap between the two thresholds
/// reports as "indeterminate".
std::vector<DichotomyRow> dichotomy_report(const GridFunction& phi,
                                           const std::vector<double>& orders, double d_min,
                                           const SpectralGrid& grid);

struct GapResult {
    double interior_norm = 0.0; // H^{-1}((a,b)) norm, via the minimal extension
    double global_norm = 0.0;   // H^{-1}(R) norm of the trivial extension
    double gap = 0.0;           // global^2 - interior^2 >= 0
};

GapResult restriction_norm_gap(const DeltaComb& u, const IntervalDomain& dom);

} // namespace hs

#pragma once

#include "hs/delta.hpp"

#include <utility>
#include <vector>

namespace hs {

/// Open interval (a, b), a < b.
struct IntervalDomain {
    double a = 0.0;
    double b = 1.0;

    IntervalDomain(double a_, double b_);
    double length() const { return b - a; }
};

/// Result of a minimal-norm extension: the boundary correction that was
/// added, the extended comb, its achieved H^{-m}(R) norm, and orthogonality
/// residuals |(extended, delta_y)| at exterior probe points.
struct ExtensionResult {
    DeltaComb boundary_comb;
    DeltaComb extended;
    double norm = 0.0;
    std::vector<std::pair<double, double>> residuals; // (probe location, |inner|)
};

/// Default probe locations for residual diagnostics on (a, b).
std::vector<double> default_probe_points(const IntervalDomain& dom);

/// Closed-form minimizing coefficients (c_a, c_b) of
/// ||U + c_a delta_a + c_b delta_b||_{H^{-1}(R)}^2 for an order-0 comb U
/// supported in [a, b].
std::pair<cplx, cplx> minimal_coeffs_h1(const DeltaComb& u, const IntervalDomain& dom);

/// Independent minimizer: solves the 2x2 normal equations G c = -r with
/// G = delta_gram_h1({a, b}) and r_j = (U, delta_j)_{H^{-1}}.
std::pair<cplx, cplx> oracle_minimize_h1(const DeltaComb& u, const IntervalDomain& dom);

/// Minimal-norm extension in H^{-1}(R) with residual diagnostics.
ExtensionResult project_Qminus1(const DeltaComb& u, const IntervalDomain& dom,
                                const std::vector<double>& extra_probes = {});

/// ||delta_x||^2_{H^{-1}((a,b))} = sinh(b-x) sinh(x-a) / sinh(b-a), a < x < b.
double delta_interval_norm_sq(double x, const IntervalDomain& dom);

/// H^{-m}(R) inner product of two delta combs (any orders < m) by tail-corrected
/// frequency quadrature of (i xi)^j (-i xi)^k (1+xi^2)^{-m} e^{i(x-y) xi} / (2 pi).
cplx comb_inner_hminus_m(const DeltaComb& u, const DeltaComb& v, int m);

/// Minimal-norm extension in H^{-m}(R), m in {1,2,3}: minimizes over the
/// 2m-dimensional boundary span {delta_a^{(j)}, delta_b^{(j)} : j < m}.
ExtensionResult project_Qminus_m(const DeltaComb& u, const IntervalDomain& dom, int m,
                                 const std::vector<double>& extra_probes = {});

} // namespace hs

#include "hs/probe.hpp"
#include "hs/kernels.hpp"

#include <cmath>
#include <numbers>

namespace hs {

SpectralGrid default_probe_grid(double d_max)
{
    // half-width large enough that bump spectra are negligible at the cut;
    // spacing keeps the periodization images beyond d_max plus support slack
    const double half_width = 409.6;
    const double target_dxi = 2.0 * std::numbers::pi / (std::max(d_max, 1.0) + 16.0);
    std::size_t n = 1024;
    while (static_cast<double>(n) * target_dxi < 2.0 * half_width && n < (1u << 22))
        n *= 2;
    return SpectralGrid{half_width, n};
}

ChiScan chi_scan(const GridFunction& phi, SobolevOrder s, std::vector<double> d_values,
                 const SpectralGrid& grid)
{
    if (phi.all_zero())
        throw degenerate_input("chi_scan: phi must be nonzero");
    for (double d : d_values)
        if (!std::isfinite(d))
            throw invalid_parameter("chi_scan: non-finite translation distance");

    const SpectralFunction phihat = fourier_transform(phi, grid);
    const std::size_t n = grid.num_points;
    const double dxi = grid.spacing();

    std::vector<double> w(n);
    kernels::bessel_weights(w.data(), n, -grid.half_width, dxi, s.s);

    SpectralFunction mu{grid, std::vector<cplx>(n)};
    std::vector<double> mu_real(n);
    for (std::size_t j = 0; j < n; ++j) {
        mu_real[j] = w[j] * std::norm(phihat.values[j]);
        mu.values[j] = cplx{mu_real[j], 0.0};
    }

    auto chi_at = [&](double d) {
        const cplx total = kernels::phase_sum_real(mu_real.data(), n, d * grid.xi(0), d * dxi);
        const cplx ends = 0.5 * (mu_real.front() * std::polar(1.0, d * grid.xi(0)) +
                                 mu_real.back() * std::polar(1.0, d * grid.xi(n - 1)));
        return dxi * (total - ends);
    };

    ChiScan scan{s, std::move(d_values), {}, std::move(mu), chi_at(0.0)};
    scan.chi.reserve(scan.d_values.size());
    for (double d : scan.d_values)
        scan.chi.push_back(chi_at(d));
    return scan;
}

std::vector<double> dichotomy_d_grid(double d_min)
{
    constexpr int kPoints = 64;
    std::vector<double> d(kPoints);
    const double ratio = std::pow(20.0, 1.0 / (kPoints - 1));
    double v = d_min;
    for (int i = 0; i < kPoints; ++i) {
        d[static_cast<std::size_t>(i)] = v;
        v *= ratio;
    }
    return d;
}

std::vector<DichotomyRow> dichotomy_report(const GridFunction& phi,
                                           const std::vector<double>& orders, double d_min,
                                           const SpectralGrid& grid)
{
    if (!(d_min > 2.0 * phi.support_radius()))
        throw overlap_error("dichotomy_report: d_min must exceed twice the support radius");

    const std::vector<double> d = dichotomy_d_grid(d_min);
    std::vector<DichotomyRow> rows;
    rows.reserve(orders.size());
    for (double s : orders) {
        const ChiScan scan = chi_scan(phi, SobolevOrder(s), d, grid);
        DichotomyRow row;
        row.s = s;
        row.chi0 = scan.chi0.real();
        for (const cplx& c : scan.chi)
            row.max_abs_chi = std::max(row.max_abs_chi, std::abs(c));
        row.ratio = row.max_abs_chi / row.chi0;
        if (row.ratio <= 1e-8)
            row.classification = "orthogonal";
        else if (row.ratio > 1e-4)
            row.classification = "non-orthogonal";
        else
            row.classification = "indeterminate";
        rows.push_back(std::move(row));
    }
    return rows;
}

GapResult restriction_norm_gap(const DeltaComb& u, const IntervalDomain& dom)
{
    for (const auto& atom : u.atoms()) {
        if (atom.order > 0)
            throw unsupported_atom("restriction_norm_gap: order-0 atoms only");
        if (!(atom.location > dom.a) || !(atom.location < dom.b))
            throw domain_error("restriction_norm_gap: atoms must lie strictly inside (a, b)");
    }
    GapResult res;
    if (u.empty())
        return res;
    const ExtensionResult ext = project_Qminus1(u, dom);
    const double interior_sq = ext.norm * ext.norm;
    const double global_sq = comb_inner_hminus1(u, u).real();
    res.interior_norm = ext.norm;
    res.global_norm = std::sqrt(std::max(0.0, global_sq));
    res.gap = global_sq - interior_sq;
    return res;
}

} // namespace hs

#include "hs/extension.hpp"
#include "hs/kernels.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace hs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLogDomainLength = 30.0; // switch sinh ratios to exp form past this

double decay(double t)
{
    return t > 700.0 ? 0.0 : std::exp(-t);
}

// log(sinh t) for t > 0 without overflow
double log_sinh(double t)
{
    return t + std::log1p(-std::exp(-2.0 * t)) - std::numbers::ln2;
}

void require_order0_in_domain(const DeltaComb& u, const IntervalDomain& dom, const char* who)
{
    for (const auto& atom : u.atoms()) {
        if (atom.order > 0)
            throw unsupported_atom(std::string(who) + ": derivative atoms are not supported here");
        if (atom.location < dom.a || atom.location > dom.b)
            throw unsupported_input(std::string(who) + ": atom outside [a, b]");
    }
}

} // namespace

IntervalDomain::IntervalDomain(double a_, double b_) : a(a_), b(b_)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw invalid_parameter("IntervalDomain: need finite a < b");
}

std::vector<double> default_probe_points(const IntervalDomain& dom)
{
    return {dom.a - 2.0, dom.a - 0.5, dom.a, dom.b, dom.b + 0.5, dom.b + 2.0};
}

std::pair<cplx, cplx> minimal_coeffs_h1(const DeltaComb& u, const IntervalDomain& dom)
{
    require_order0_in_domain(u, dom, "minimal_coeffs_h1");
    const cplx ra = comb_inner_hminus1(u, DeltaComb::delta(dom.a));
    const cplx rb = comb_inner_hminus1(u, DeltaComb::delta(dom.b));
    const double len = dom.length();

    if (len <= kLogDomainLength) {
        const double el = std::exp(len);
        const double sh = std::sinh(len);
        return {(rb - el * ra) / sh, (ra - el * rb) / sh};
    }
    // (r_b - e^L r_a)/sinh L  ==  (2 e^{-L} r_b - 2 r_a)/(1 - e^{-2L})
    const double eml = decay(len);
    const double den = 1.0 - eml * eml;
    return {(2.0 * eml * rb - 2.0 * ra) / den, (2.0 * eml * ra - 2.0 * rb) / den};
}

std::pair<cplx, cplx> oracle_minimize_h1(const DeltaComb& u, const IntervalDomain& dom)
{
    require_order0_in_domain(u, dom, "oracle_minimize_h1");
    const GramMatrix g = delta_gram_h1({dom.a, dom.b});
    Eigen::Vector2cd r;
    r(0) = comb_inner_hminus1(u, DeltaComb::delta(dom.a));
    r(1) = comb_inner_hminus1(u, DeltaComb::delta(dom.b));
    const Eigen::Vector2cd c = g.values.llt().solve(-r);
    return {c(0), c(1)};
}

ExtensionResult project_Qminus1(const DeltaComb& u, const IntervalDomain& dom,
                                const std::vector<double>& extra_probes)
{
    const auto [ca, cb] = minimal_coeffs_h1(u, dom);

    ExtensionResult res;
    res.boundary_comb = DeltaComb({DeltaAtom{dom.a, 0, ca}, DeltaAtom{dom.b, 0, cb}});
    res.extended = u + res.boundary_comb;
    res.norm = std::sqrt(std::max(0.0, comb_inner_hminus1(res.extended, res.extended).real()));

    std::vector<double> probes = default_probe_points(dom);
    probes.insert(probes.end(), extra_probes.begin(), extra_probes.end());
    for (double y : probes)
        res.residuals.emplace_back(
            y, std::abs(comb_inner_hminus1(res.extended, DeltaComb::delta(y))));
    return res;
}

double delta_interval_norm_sq(double x, const IntervalDomain& dom)
{
    if (!(x > dom.a) || !(x < dom.b))
        throw domain_error("delta_interval_norm_sq: need a < x < b");
    const double len = dom.length();
    if (len <= kLogDomainLength)
        return std::sinh(dom.b - x) * std::sinh(x - dom.a) / std::sinh(len);
    return std::exp(log_sinh(dom.b - x) + log_sinh(x - dom.a) - log_sinh(len));
}

// ---------------------------------------------------------------------------
// H^{-m} pair quadrature
//
// (delta^{(j)}_x, delta^{(k)}_y)_{H^{-m}} = i^j (-i)^k / (2 pi) * I_{q,m}(x-y),
// q = j + k, with I_{q,m}(a) = Integral xi^q (1+xi^2)^{-m} e^{i a xi} dxi.
//
// I is evaluated by composite trapezoid on a symmetric truncated grid plus
// two analytic corrections that together push the error to ~1e-11:
//   * Euler-Maclaurin boundary-derivative terms at the two cuts,
//   * one-sided tail integrals from integration-by-parts series (a != 0)
//     or the convergent power-law series (a == 0).
// ---------------------------------------------------------------------------

namespace {

constexpr int kTaylorOrder = 28;

// Taylor coefficients t[r] = g^{(r)}(X)/r! of g = xi^q (1+xi^2)^{-m} at X > 1.
std::array<double, kTaylorOrder + 1> taylor_at(int q, int m, double X)
{
    std::array<double, kTaylorOrder + 1> A{}, B{}, P{}, T{};
    // xi^q at X
    double binom = 1.0, powx = std::pow(X, q);
    for (int r = 0; r <= std::min(q, kTaylorOrder); ++r) {
        A[static_cast<std::size_t>(r)] = binom * powx;
        binom *= static_cast<double>(q - r) / static_cast<double>(r + 1);
        powx /= X;
    }
    // (1+xi^2) at X, then its -m power via the standard series recurrence
    B[0] = 1.0 + X * X;
    B[1] = 2.0 * X;
    B[2] = 1.0;
    const double alpha = -static_cast<double>(m);
    P[0] = std::pow(B[0], alpha);
    for (int r = 1; r <= kTaylorOrder; ++r) {
        double s = 0.0;
        for (int i = 1; i <= std::min(r, 2); ++i)
            s += (alpha * i - static_cast<double>(r - i)) * B[static_cast<std::size_t>(i)] *
                 P[static_cast<std::size_t>(r - i)];
        P[static_cast<std::size_t>(r)] = s / (static_cast<double>(r) * B[0]);
    }
    for (int r = 0; r <= kTaylorOrder; ++r) {
        double s = 0.0;
        for (int i = 0; i <= std::min(r, q); ++i)
            s += A[static_cast<std::size_t>(i)] * P[static_cast<std::size_t>(r - i)];
        T[static_cast<std::size_t>(r)] = s;
    }
    return T;
}

// Integral_X^inf xi^q (1+xi^2)^{-m} e^{i a xi} dxi for a >= 0
cplx one_sided_tail(int q, int m, double a, double X)
{
    if (a == 0.0) {
        // xi^{q-2m} (1+xi^{-2})^{-m} integrated term by term
        double sum = 0.0, coeff = 1.0;
        for (int l = 0; l <= 80; ++l) {
            const int p = 2 * m + 2 * l - q; // decaying power, >= 2
            const double term = coeff * std::pow(X, 1 - p) / static_cast<double>(p - 1);
            sum += term;
            if (std::fabs(term) < 1e-20 * std::max(std::fabs(sum), 1e-300))
                break;
            coeff *= -static_cast<double>(m + l) / static_cast<double>(l + 1);
        }
        return cplx{sum, 0.0};
    }
    const auto T = taylor_at(q, m, X);
    const cplx ia{0.0, a};
    cplx sum{0.0, 0.0};
    double factorial = 1.0, prev = std::numeric_limits<double>::infinity();
    cplx ia_pow = ia;
    for (int r = 0; r <= kTaylorOrder; ++r) {
        if (r > 0)
            factorial *= r;
        const double gr = T[static_cast<std::size_t>(r)] * factorial;
        const cplx term = (r % 2 == 0 ? 1.0 : -1.0) * gr / ia_pow;
        if (std::abs(term) > prev) // asymptotic series: stop at the smallest term
            break;
        sum += term;
        prev = std::abs(term);
        ia_pow *= ia;
    }
    return -std::polar(1.0, a * X) * sum;
}

// derivatives of G = g e^{i a xi} at X up to order 3, with g-derivative parity
// flip for the left cut (-X) folded in by the caller
std::array<cplx, 4> phase_derivs(const std::array<double, 4>& g, double a, double X, int parity_q,
                                 bool left_cut)
{
    std::array<cplx, 4> out{};
    const cplx e = std::polar(1.0, left_cut ? -a * X : a * X);
    const cplx ia{0.0, a};
    for (int nd = 0; nd <= 3; ++nd) {
        cplx s{0.0, 0.0};
        double binom = 1.0;
        for (int k = 0; k <= nd; ++k) {
            cplx ia_pow{1.0, 0.0};
            for (int t = 0; t < nd - k; ++t)
                ia_pow *= ia;
            double gk = g[static_cast<std::size_t>(k)];
            if (left_cut && (parity_q + k) % 2 != 0)
                gk = -gk;
            s += binom * ia_pow * gk;
            binom *= static_cast<double>(nd - k) / static_cast<double>(k + 1);
        }
        out[static_cast<std::size_t>(nd)] = e * s;
    }
    return out;
}

// I_{q,m}(a) on a chosen grid
cplx bessel_pair_integral(int q, int m, double a)
{
    if (a == 0.0 && q % 2 == 1)
        return {0.0, 0.0}; // odd integrand

    double sign = 1.0;
    double aa = a;
    if (aa < 0.0) { // I(-a) = conj(I(a)) for the real integrand xi^q (1+xi^2)^{-m}
        aa = -aa;
        sign = -1.0;
    }

    // grid: keep |a| * Xi large enough for the tail series, resolve the phase
    const double base = 256.0 * static_cast<double>(m);
    double half_width = base;
    if (aa > 0.0)
        half_width = std::min(std::max(base, 150.0 / aa), 524288.0);
    const double target_dxi = kTwoPi / (std::max(aa, 1.0) + 48.0);
    std::size_t n = 1024;
    while (static_cast<double>(n) * target_dxi < 2.0 * half_width && n < (1u << 23))
        n *= 2;
    const double dxi = 2.0 * half_width / static_cast<double>(n);

    // trapezoid over [-Xi, Xi - dxi] in blocks (integrand built on the fly)
    constexpr std::size_t kBlock = 8192;
    std::vector<double> f(kBlock);
    cplx acc{0.0, 0.0};
    for (std::size_t start = 0; start < n; start += kBlock) {
        const std::size_t len = std::min(kBlock, n - start);
        for (std::size_t j = 0; j < len; ++j) {
            const double xi = -half_width + dxi * static_cast<double>(start + j);
            f[j] = std::pow(xi, q) * std::pow(1.0 + xi * xi, -static_cast<double>(m));
        }
        const double th0 = aa * (-half_width + dxi * static_cast<double>(start));
        acc += kernels::phase_sum_real(f.data(), len, th0, aa * dxi);
    }
    const double xi_last = half_width - dxi;
    const double g_first =
        std::pow(-half_width, q) * std::pow(1.0 + half_width * half_width, -static_cast<double>(m));
    const double g_last = std::pow(xi_last, q) * std::pow(1.0 + xi_last * xi_last, -static_cast<double>(m));
    cplx value = dxi * (acc - 0.5 * g_first * std::polar(1.0, -aa * half_width) -
                        0.5 * g_last * std::polar(1.0, aa * xi_last));

    // Euler-Maclaurin boundary terms at the cuts
    const auto TR = taylor_at(q, m, xi_last);
    const auto TL = taylor_at(q, m, half_width);
    std::array<double, 4> gR{}, gL{};
    double factorial = 1.0;
    for (int r = 0; r <= 3; ++r) {
        if (r > 0)
            factorial *= r;
        gR[static_cast<std::size_t>(r)] = TR[static_cast<std::size_t>(r)] * factorial;
        gL[static_cast<std::size_t>(r)] = TL[static_cast<std::size_t>(r)] * factorial;
    }
    const auto dR = phase_derivs(gR, aa, xi_last, q, false);
    const auto dL = phase_derivs(gL, aa, half_width, q, true);
    value += -dxi * dxi / 12.0 * (dR[1] - dL[1]);
    value += dxi * dxi * dxi * dxi / 720.0 * (dR[3] - dL[3]);

    // analytic tails beyond the cuts
    value += one_sided_tail(q, m, aa, xi_last);
    const cplx left = one_sided_tail(q, m, aa, half_width);
    value += (q % 2 == 0) ? std::conj(left) : -std::conj(left);

    return sign < 0.0 ? std::conj(value) : value;
}

cplx i_pow(int p) // i^p
{
    switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

cplx atom_pair_hminus_m(const DeltaAtom& x_atom, const DeltaAtom& y_atom, int m)
{
    const int q = x_atom.order + y_atom.order;
    const cplx phase = i_pow(x_atom.order) * std::conj(i_pow(y_atom.order));
    return x_atom.weight * std::conj(y_atom.weight) * phase *
           bessel_pair_integral(q, m, x_atom.location - y_atom.location) / kTwoPi;
}

} // namespace

cplx comb_inner_hminus_m(const DeltaComb& u, const DeltaComb& v, int m)
{
    if (m < 1 || m > 3)
        throw invalid_parameter("comb_inner_hminus_m: m must be in {1,2,3}");
    if (u.max_order() >= m || v.max_order() >= m)
        throw unsupported_atom("comb_inner_hminus_m: atom of order >= m is not in H^{-m}");
    cplx total{0.0, 0.0};
    for (const auto& a : u.atoms())
        for (const auto& b : v.atoms())
            total += atom_pair_hminus_m(a, b, m);
    return total;
}

ExtensionResult project_Qminus_m(const DeltaComb& u, const IntervalDomain& dom, int m,
                                 const std::vector<double>& extra_probes)
{
    if (m < 1 || m > 3)
        throw invalid_parameter("project_Qminus_m: m must be in {1,2,3}");
    if (u.max_order() >= m)
        throw unsupported_atom("project_Qminus_m: atom of order >= m is not in H^{-m}");
    for (const auto& atom : u.atoms())
        if (atom.location < dom.a || atom.location > dom.b)
            throw unsupported_input("project_Qminus_m: atom outside [a, b]");

    // boundary span {delta_a^{(j)}, delta_b^{(j)} : 0 <= j < m}
    std::vector<DeltaAtom> basis;
    for (int j = 0; j < m; ++j) {
        basis.push_back(DeltaAtom{dom.a, j, cplx{1.0, 0.0}});
        basis.push_back(DeltaAtom{dom.b, j, cplx{1.0, 0.0}});
    }
    const auto dim = static_cast<Eigen::Index>(basis.size());

    Eigen::MatrixXcd gram(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = r; c < dim; ++c) {
            const cplx v = atom_pair_hminus_m(basis[static_cast<std::size_t>(r)],
                                              basis[static_cast<std::size_t>(c)], m);
            gram(r, c) = v;
            gram(c, r) = std::conj(v);
        }

    Eigen::VectorXcd rhs(dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        cplx s{0.0, 0.0};
        for (const auto& atom : u.atoms())
            s += atom_pair_hminus_m(atom, basis[static_cast<std::size_t>(r)], m);
        rhs(r) = s; // (U, basis_r)
    }
    // minimize ||U + sum c_r basis_r||^2: stationarity gives G^T c = -rhs,
    // i.e. c = conj(-G^{-1} conj(rhs)) for Hermitian G
    Eigen::VectorXcd coeffs = gram.llt().solve(-rhs.conjugate()).conjugate();

    std::vector<DeltaAtom> correction;
    for (Eigen::Index r = 0; r < dim; ++r) {
        DeltaAtom atom = basis[static_cast<std::size_t>(r)];
        atom.weight = coeffs(r);
        correction.push_back(atom);
    }

    ExtensionResult res;
    res.boundary_comb = DeltaComb(std::move(correction));
    res.extended = u + res.boundary_comb;
    res.norm = std::sqrt(std::max(0.0, comb_inner_hminus_m(res.extended, res.extended, m).real()));

    std::vector<double> probes = default_probe_points(dom);
    probes.insert(probes.end(), extra_probes.begin(), extra_probes.end());
    for (double y : probes)
        res.residuals.emplace_back(
            y, std::abs(comb_inner_hminus_m(res.extended, DeltaComb::delta(y), m)));
    return res;
}

} // namespace hs

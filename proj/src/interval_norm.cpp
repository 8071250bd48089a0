#include "hs/interval_norm.hpp"
#include "hs/bump.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hs {

namespace {

// one-sided 4th-order stencils (left edge; mirror with sign flips for first
// derivative at the right edge)
constexpr double kD1Edge[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};         // / (12 h)
constexpr double kD2Edge[6] = {45.0, -154.0, 214.0, -156.0, 61.0, -10.0}; // / (12 h^2)

cplx edge_d1(const std::vector<cplx>& f, double h, bool right)
{
    const std::size_t n = f.size();
    cplx s{0.0, 0.0};
    for (int k = 0; k < 5; ++k)
        s += kD1Edge[k] * (right ? -f[n - 1 - static_cast<std::size_t>(k)]
                                 : f[static_cast<std::size_t>(k)]);
    return s / (12.0 * h);
}

// 4th-order first derivative on the whole sample array
std::vector<cplx> fd4_d1(const std::vector<cplx>& f, double h)
{
    const std::size_t n = f.size();
    std::vector<cplx> d(n);
    auto one_sided = [&](std::size_t i, int dir) {
        cplx s{0.0, 0.0};
        for (int k = 0; k < 5; ++k)
            s += kD1Edge[k] * f[i + static_cast<std::size_t>(dir * k)];
        return static_cast<double>(dir) * s / (12.0 * h);
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (i < 2)
            d[i] = one_sided(i, +1);
        else if (i + 2 >= n)
            d[i] = one_sided(i, -1);
        else
            d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    return d;
}

std::vector<cplx> fd4_d2(const std::vector<cplx>& f, double h)
{
    const std::size_t n = f.size();
    std::vector<cplx> d(n);
    auto one_sided = [&](std::size_t i, int dir) {
        cplx s{0.0, 0.0};
        for (int k = 0; k < 6; ++k)
            s += kD2Edge[k] * f[i + static_cast<std::size_t>(dir * k)];
        return s / (12.0 * h * h);
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (i < 2)
            d[i] = one_sided(i, +1);
        else if (i + 2 >= n)
            d[i] = one_sided(i, -1);
        else
            d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) /
                   (12.0 * h * h);
    }
    return d;
}

// composite Simpson; falls back to Simpson + 3/8 on an odd segment count
double simpson(const std::vector<double>& f, double h)
{
    const std::size_t n = f.size();
    const std::size_t segments = n - 1;
    double total = 0.0;
    std::size_t last = n - 1; // Simpson covers [0, last]
    if (segments % 2 != 0) {
        // 3/8 rule on the final three segments
        total += 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
        last = n - 4;
    }
    for (std::size_t i = 0; i + 2 <= last; i += 2)
        total += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    return total;
}

} // namespace

IntervalFunction::IntervalFunction(double a, double b, std::vector<cplx> samples,
                                   std::optional<TraceData> analytic_traces)
    : a_(a), b_(b), samples_(std::move(samples)), analytic_(std::move(analytic_traces))
{
    if (!std::isfinite(a_) || !std::isfinite(b_) || !(a_ < b_))
        throw invalid_parameter("IntervalFunction: need finite a < b");
    if (samples_.size() < 2)
        throw invalid_parameter("IntervalFunction: need at least 2 samples");
    if (analytic_) {
        const auto& t = *analytic_;
        if (!std::isfinite(t.value_a.real()) || !std::isfinite(t.value_b.real()) ||
            !std::isfinite(t.deriv_a.real()) || !std::isfinite(t.deriv_b.real()))
            throw invalid_parameter("IntervalFunction: non-finite trace data");
        const double scale = 1.0 + std::abs(t.value_a) + std::abs(t.value_b);
        if (std::abs(samples_.front() - t.value_a) > 1e-6 * scale ||
            std::abs(samples_.back() - t.value_b) > 1e-6 * scale)
            throw invalid_parameter("IntervalFunction: endpoint samples inconsistent "
                                    "with the supplied traces");
    }
}

IntervalFunction IntervalFunction::sample(double a, double b, std::size_t n,
                                          const std::function<cplx(double)>& f,
                                          std::optional<TraceData> analytic_traces)
{
    if (n < 2)
        throw invalid_parameter("IntervalFunction::sample: need at least 2 samples");
    std::vector<cplx> values(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        values[i] = f(a + h * static_cast<double>(i));
    values.back() = f(b); // avoid rounding past the endpoint
    return IntervalFunction(a, b, std::move(values), std::move(analytic_traces));
}

TraceData IntervalFunction::traces() const
{
    if (analytic_)
        return *analytic_;
    if (samples_.size() < 6)
        throw resolution_error("IntervalFunction: too few samples for finite-difference traces");
    TraceData t;
    t.value_a = samples_.front();
    t.value_b = samples_.back();
    t.deriv_a = edge_d1(samples_, h(), false);
    t.deriv_b = edge_d1(samples_, h(), true);
    return t;
}

double h1_interval_norm_sq(const IntervalFunction& phi)
{
    if (phi.size() < 16)
        throw resolution_error("h1_interval_norm_sq: need at least 16 samples");
    const TraceData t = phi.traces();
    const std::vector<cplx> d1 = fd4_d1(phi.samples(), phi.h());

    std::vector<double> integrand(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        integrand[i] = std::norm(phi.samples()[i]) + std::norm(d1[i]);

    return std::norm(t.value_a) + std::norm(t.value_b) + simpson(integrand, phi.h());
}

double h2_interval_norm_sq(const IntervalFunction& phi)
{
    if (phi.size() < 24)
        throw resolution_error("h2_interval_norm_sq: need at least 24 samples");
    const TraceData t = phi.traces();
    cplx da = t.deriv_a, db = t.deriv_b;
    if (!phi.has_analytic_traces()) {
        da = edge_d1(phi.samples(), phi.h(), false);
        db = edge_d1(phi.samples(), phi.h(), true);
    }

    const std::vector<cplx> d1 = fd4_d1(phi.samples(), phi.h());
    const std::vector<cplx> d2 = fd4_d2(phi.samples(), phi.h());
    std::vector<double> integrand(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        integrand[i] =
            std::norm(phi.samples()[i]) + 2.0 * std::norm(d1[i]) + std::norm(d2[i]);

    const double boundary = std::norm(t.value_a) + std::norm(da) + std::norm(t.value_a - da) +
                            std::norm(t.value_b) + std::norm(db) + std::norm(t.value_b + db);
    return boundary + simpson(integrand, phi.h());
}

GridFunction h1_minimal_extension(const IntervalFunction& phi, double halo)
{
    if (!(halo >= 10.0))
        throw tail_precision_error("h1_minimal_extension: halo must be at least 10 so the "
                                   "truncated tail stays below 1e-8");
    const TraceData t = phi.traces();
    const double a = phi.a(), b = phi.b(), h = phi.h();

    // extend phi's own lattice outward so a and b stay on nodes
    const auto pad = static_cast<std::size_t>(std::ceil((halo + 1.0) / h)) + 1;
    const std::size_t n = pad + phi.size() + pad;
    const double x0 = a - h * static_cast<double>(pad);

    std::vector<cplx> samples(n, cplx{0.0, 0.0});
    const bool zero = std::all_of(phi.samples().begin(), phi.samples().end(),
                                  [](const cplx& z) { return z == cplx{0.0, 0.0}; });
    for (std::size_t k = 0; k < n; ++k) {
        const double x = x0 + h * static_cast<double>(k);
        cplx v;
        if (k < pad)
            v = t.value_a * std::exp(x - a);
        else if (k < pad + phi.size())
            v = phi.samples()[k - pad];
        else
            v = t.value_b * std::exp(b - x);
        const double dist = std::max(a - x, x - b);
        samples[k] = v * smooth_cutoff(dist - halo);
    }
    const double lo = zero ? a : a - halo - 1.0;
    const double hi = zero ? b : b + halo + 1.0;
    return GridFunction(x0, h, std::move(samples), lo, hi);
}

double h1_extension_norm_sq_quadrature(const IntervalFunction& phi, double halo)
{
    const GridFunction ext = h1_minimal_extension(phi, halo);
    return physical_inner_hm(ext, ext, 1).real();
}

namespace {

// energy of one trace-preserving side profile v(t) = (A + Bt + c t^2) e^{-beta t}
// with B = B0 + A*beta so that v(0) = A and v'(0) = B0 for every (beta, c)
double side_energy(cplx A, cplx B0, double beta, cplx c)
{
    if (!(beta > 0.05))
        return 1e100; // repel the minimizer from non-decaying profiles
    const double T = std::max(60.0 / beta, 60.0);
    const std::size_t n = 24001;
    const double dt = T / static_cast<double>(n - 1);
    std::vector<double> integrand(n);
    const cplx B = B0 + A * beta;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = dt * static_cast<double>(i);
        const double e = std::exp(-beta * t);
        const cplx p = A + B * t + c * t * t;
        const cplx p1 = B + 2.0 * c * t;
        const cplx v = p * e;
        const cplx v1 = (p1 - beta * p) * e;
        const cplx v2 = (2.0 * c - 2.0 * beta * p1 + beta * beta * p) * e;
        integrand[i] = std::norm(v) + 2.0 * std::norm(v1) + std::norm(v2);
    }
    return simpson(integrand, dt);
}

// Nelder-Mead on (log beta, c_re) -- weights here are real in every caller,
// so the quadratic coefficient is kept real as well
double minimize_side(cplx A, cplx B0)
{
    auto f = [&](double lb, double c) { return side_energy(A, B0, std::exp(lb), cplx{c, 0.0}); };

    struct Vertex {
        double lb, c, val;
    };
    std::array<Vertex, 3> simplex{Vertex{0.0, 0.0, 0.0}, Vertex{0.4, 0.0, 0.0},
                                  Vertex{0.0, 0.4, 0.0}};
    for (auto& v : simplex)
        v.val = f(v.lb, v.c);

    for (int iter = 0; iter < 400; ++iter) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& l, const Vertex& r) { return l.val < r.val; });
        if (std::fabs(simplex[2].val - simplex[0].val) <
            1e-13 * (1.0 + std::fabs(simplex[0].val)))
            break;
        const double cb_lb = 0.5 * (simplex[0].lb + simplex[1].lb);
        const double cb_c = 0.5 * (simplex[0].c + simplex[1].c);
        Vertex refl{cb_lb + (cb_lb - simplex[2].lb), cb_c + (cb_c - simplex[2].c), 0.0};
        refl.val = f(refl.lb, refl.c);
        if (refl.val < simplex[0].val) {
            Vertex exp_{cb_lb + 2.0 * (cb_lb - simplex[2].lb),
                        cb_c + 2.0 * (cb_c - simplex[2].c), 0.0};
            exp_.val = f(exp_.lb, exp_.c);
            simplex[2] = exp_.val < refl.val ? exp_ : refl;
        } else if (refl.val < simplex[1].val) {
            simplex[2] = refl;
        } else {
            Vertex contr{cb_lb + 0.5 * (simplex[2].lb - cb_lb),
                         cb_c + 0.5 * (simplex[2].c - cb_c), 0.0};
            contr.val = f(contr.lb, contr.c);
            if (contr.val < simplex[2].val) {
                simplex[2] = contr;
            } else {
                for (int i = 1; i < 3; ++i) {
                    simplex[i].lb = 0.5 * (simplex[i].lb + simplex[0].lb);
                    simplex[i].c = 0.5 * (simplex[i].c + simplex[0].c);
                    simplex[i].val = f(simplex[i].lb, simplex[i].c);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& l, const Vertex& r) { return l.val < r.val; });
    return simplex[0].val;
}

} // namespace

double h2_parametric_min_norm_sq(const IntervalFunction& phi)
{
    if (phi.size() < 24)
        throw resolution_error("h2_parametric_min_norm_sq: need at least 24 samples");
    const TraceData t = phi.traces();

    const std::vector<cplx> d1 = fd4_d1(phi.samples(), phi.h());
    const std::vector<cplx> d2 = fd4_d2(phi.samples(), phi.h());
    std::vector<double> integrand(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        integrand[i] =
            std::norm(phi.samples()[i]) + 2.0 * std::norm(d1[i]) + std::norm(d2[i]);
    const double interior = simpson(integrand, phi.h());

    // outward derivative: x = a - t on the left, x = b + t on the right
    const double left = minimize_side(t.value_a, -t.deriv_a);
    const double right = minimize_side(t.value_b, t.deriv_b);
    return interior + left + right;
}

} // namespace hs

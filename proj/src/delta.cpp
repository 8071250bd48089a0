#include "hs/delta.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hs {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kWeightFloor = 1e-300; // below double-precision relevance
constexpr double kExpCut = 700.0;       // e^{-t} underflows past here

double decay(double dist)
{
    return dist > kExpCut ? 0.0 : std::exp(-dist);
}

} // namespace

DeltaComb::DeltaComb(std::vector<DeltaAtom> atoms) : atoms_(std::move(atoms))
{
    for (const auto& a : atoms_) {
        if (!std::isfinite(a.location) || !std::isfinite(a.weight.real()) ||
            !std::isfinite(a.weight.imag()))
            throw invalid_parameter("DeltaComb: non-finite atom");
        if (a.order < 0)
            throw invalid_parameter("DeltaComb: negative derivative order");
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const DeltaAtom& l, const DeltaAtom& r) {
        return l.location != r.location ? l.location < r.location : l.order < r.order;
    });
    std::vector<DeltaAtom> merged;
    for (const auto& a : atoms_) {
        if (!merged.empty() && merged.back().location == a.location &&
            merged.back().order == a.order)
            merged.back().weight += a.weight;
        else
            merged.push_back(a);
    }
    std::erase_if(merged, [](const DeltaAtom& a) { return std::abs(a.weight) < kWeightFloor; });
    atoms_ = std::move(merged);
}

DeltaComb DeltaComb::delta(double location, cplx weight, int order)
{
    return DeltaComb({DeltaAtom{location, order, weight}});
}

int DeltaComb::max_order() const
{
    int m = 0;
    for (const auto& a : atoms_)
        m = std::max(m, a.order);
    return m;
}

DeltaComb DeltaComb::operator+(const DeltaComb& other) const
{
    std::vector<DeltaAtom> all = atoms_;
    all.insert(all.end(), other.atoms_.begin(), other.atoms_.end());
    return DeltaComb(std::move(all));
}

DeltaComb DeltaComb::scaled(cplx factor) const
{
    std::vector<DeltaAtom> all = atoms_;
    for (auto& a : all)
        a.weight *= factor;
    return DeltaComb(std::move(all));
}

bool operator==(const DeltaComb& u, const DeltaComb& v)
{
    if (u.atoms_.size() != v.atoms_.size())
        return false;
    for (std::size_t i = 0; i < u.atoms_.size(); ++i) {
        const auto& a = u.atoms_[i];
        const auto& b = v.atoms_[i];
        if (a.location != b.location || a.order != b.order || a.weight != b.weight)
            return false;
    }
    return true;
}

bool approx_equal(const DeltaComb& u, const DeltaComb& v, double tol)
{
    if (u.size() != v.size())
        return false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto& a = u.atoms()[i];
        const auto& b = v.atoms()[i];
        if (a.location != b.location || a.order != b.order)
            return false;
        if (std::abs(a.weight - b.weight) > tol)
            return false;
    }
    return true;
}

bool GramMatrix::positive_definite() const
{
    Eigen::LLT<Eigen::MatrixXcd> llt(values);
    return llt.info() == Eigen::Success;
}

double GramMatrix::min_eigenvalue() const
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(values, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

GramMatrix delta_gram_h1(const std::vector<double>& points)
{
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j])
                throw duplicate_atom("delta_gram_h1: points must be pairwise distinct");

    GramMatrix g;
    g.sobolev_order_m = 1;
    g.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                0.5 * decay(std::fabs(points[i] - points[j]));
    return g;
}

cplx comb_inner_hminus1(const DeltaComb& u, const DeltaComb& v)
{
    if (u.max_order() > 0 || v.max_order() > 0)
        throw unsupported_atom("comb_inner_hminus1: derivative atoms are not supported "
                               "by the closed form; use the H^{-m} quadrature instead");
    cplx total{0.0, 0.0};
    for (const auto& a : u.atoms())
        for (const auto& b : v.atoms())
            total += a.weight * std::conj(b.weight) * 0.5 * decay(std::fabs(a.location - b.location));
    return total;
}

DeltaComb phi_sequence(double alpha, int n)
{
    if (!(alpha > 0.0) || !(alpha < 1.0 / std::numbers::e))
        throw invalid_parameter("phi_sequence: alpha must lie in (0, 1/e)");
    if (n < 0)
        throw invalid_parameter("phi_sequence: n must be nonnegative");
    std::vector<DeltaAtom> atoms;
    atoms.reserve(static_cast<std::size_t>(2 * n + 1));
    double w = 1.0;
    for (int k = 0; k <= 2 * n; ++k) {
        atoms.push_back(DeltaAtom{static_cast<double>(k), 0, cplx{w, 0.0}});
        w *= -alpha;
    }
    return DeltaComb(std::move(atoms));
}

double phi_norm_sq(double alpha, int n)
{
    if (!(alpha > 0.0) || !(alpha < 1.0 / std::numbers::e))
        throw invalid_parameter("phi_norm_sq: alpha must lie in (0, 1/e)");
    if (n < 0)
        throw invalid_parameter("phi_norm_sq: n must be nonnegative");
    const int count = 2 * n + 1;
    double diag = 0.0;
    for (int k = 0; k < count; ++k)
        diag += std::pow(alpha, 2.0 * k);
    double off = 0.0;
    for (int j = 0; j < count; ++j)
        for (int k = j + 1; k < count; ++k)
            off += std::pow(-alpha, j + k) * decay(static_cast<double>(k - j));
    return 0.5 * diag + off;
}

double phi_norm_diff(double alpha, int n)
{
    if (!(alpha > 0.0) || !(alpha < 1.0 / std::numbers::e))
        throw invalid_parameter("phi_norm_diff: alpha must lie in (0, 1/e)");
    if (n < 1)
        throw invalid_parameter("phi_norm_diff: n must be positive");
    const double e = std::numbers::e;
    const double ae = alpha * e;
    const double lead = std::pow(alpha, 4.0 * n - 2.0) / (2.0 * (1.0 + ae));
    const double bracket =
        (1.0 + alpha * alpha) * (1.0 - ae) + 2.0 * (1.0 - alpha / e) * std::pow(ae, 1.0 - 2.0 * n);
    return -lead * bracket;
}

SpectralFunction spectral_comb(const DeltaComb& comb, const SpectralGrid& grid)
{
    const std::size_t n = grid.num_points;
    const double dxi = grid.spacing();
    SpectralFunction out{grid, std::vector<cplx>(n, cplx{0.0, 0.0})};

    for (const auto& atom : comb.atoms()) {
        const double th0 = atom.location * grid.xi(0);
        const double dth = atom.location * dxi;
        const double cs = std::cos(dth), sn = std::sin(dth);
        double pr = 0.0, pi = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j % 256 == 0) {
                const double th = th0 + static_cast<double>(j) * dth;
                pr = std::cos(th);
                pi = std::sin(th);
            }
            cplx term = atom.weight * cplx{pr, pi};
            if (atom.order > 0) {
                const cplx ixi{0.0, grid.xi(j)};
                for (int q = 0; q < atom.order; ++q)
                    term *= ixi;
            }
            out.values[j] += kInvSqrt2Pi * term;
            const double npr = pr * cs - pi * sn;
            pi = pr * sn + pi * cs;
            pr = npr;
        }
    }
    return out;
}

} // namespace hs

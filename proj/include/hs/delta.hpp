#pragma once

#include "hs/spectral.hpp"

#include <Eigen/Dense>

#include <vector>

namespace hs {

/// One weighted derivative-of-delta term c * delta^{(order)}_{location}.
struct DeltaAtom {
    double location = 0.0;
    int order = 0;
    cplx weight{0.0, 0.0};
};

/// A finite weighted sum of (derivatives of) Dirac deltas, stored
/// symbolically. Atoms are kept in canonical form: sorted by
/// (location, order), duplicates merged, negligible weights dropped.
class DeltaComb {
public:
    DeltaComb() = default;
    explicit DeltaComb(std::vector<DeltaAtom> atoms);

    static DeltaComb delta(double location, cplx weight = cplx{1.0, 0.0}, int order = 0);

    const std::vector<DeltaAtom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    int max_order() const;

    DeltaComb operator+(const DeltaComb& other) const;
    DeltaComb scaled(cplx factor) const;

    friend bool operator==(const DeltaComb&, const DeltaComb&);

private:
    std::vector<DeltaAtom> atoms_;
};

/// True when the two combs have identical atom structure with weights equal
/// within `tol` (absolute, per atom).
bool approx_equal(const DeltaComb& u, const DeltaComb& v, double tol);

/// Pairwise H^{-m} inner products of a delta family.
struct GramMatrix {
    Eigen::MatrixXcd values;
    int sobolev_order_m = 1;

    /// Cholesky succeeds, i.e. the (Hermitian) matrix is positive definite.
    bool positive_definite() const;
    double min_eigenvalue() const;
};

/// G_jk = 1/2 e^{-|x_j - x_k|}; points must be pairwise distinct.
GramMatrix delta_gram_h1(const std::vector<double>& points);

/// Closed-form H^{-1}(R) inner product of two order-0 delta combs:
/// Sum_{j,k} c_j conj(d_k) 1/2 e^{-|x_j - y_k|}.
cplx comb_inner_hminus1(const DeltaComb& u, const DeltaComb& v);

/// The alternating comb Sum_{k=0}^{2N} (-alpha)^k delta_k, 0 < alpha < 1/e.
DeltaComb phi_sequence(double alpha, int n);

/// Closed double sum for the squared H^{-1}(R) norm of phi_sequence(alpha, n).
double phi_norm_sq(double alpha, int n);

/// Closed form for phi_norm_sq(alpha, n) - phi_norm_sq(alpha, n-1); negative.
double phi_norm_diff(double alpha, int n);

/// Spectral representation (2 pi)^{-1/2} Sum_k c_k (i xi)^{order_k} e^{i x_k xi}
/// evaluated on a grid.
SpectralFunction spectral_comb(const DeltaComb& comb, const SpectralGrid& grid);

} // namespace hs

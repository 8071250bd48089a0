#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops shared by the quadrature routines.
//
// Every kernel exists twice: a scalar reference implementation under
// hs::kernels::scalar, and a dispatched front end that picks the widest
// instruction set available on the running CPU (AVX2+FMA on x86-64,
// scalar otherwise). The two are equivalence-tested against each other;
// force_scalar() pins the dispatch to the reference path.

namespace hs::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// Instruction set the dispatcher currently selects.
Isa active();

const char* isa_name(Isa isa);

/// Pin dispatch to the scalar reference kernels (e.g. for tests or --no-simd).
void force_scalar(bool on);

/// Sum_j w_j * u_j * conj(v_j)
cplx dot_w(const double* w, const cplx* u, const cplx* v, std::size_t n);

/// Sum_k f_k * e^{i (theta0 + k*dtheta)}
cplx phase_sum(const cplx* f, std::size_t n, double theta0, double dtheta);

/// Same with a real-valued sequence f.
cplx phase_sum_real(const double* f, std::size_t n, double theta0, double dtheta);

/// w_j = (1 + xi_j^2)^s with xi_j = xi0 + j*dxi.
void bessel_weights(double* w, std::size_t n, double xi0, double dxi, double s);

namespace scalar {

cplx dot_w(const double* w, const cplx* u, const cplx* v, std::size_t n);
cplx phase_sum(const cplx* f, std::size_t n, double theta0, double dtheta);
cplx phase_sum_real(const double* f, std::size_t n, double theta0, double dtheta);

/// Plain std::pow loop; the dispatched version may take exact fast paths
/// for integer and half-integer exponents.
void bessel_weights(double* w, std::size_t n, double xi0, double dxi, double s);

} // namespace scalar

} // namespace hs::kernels

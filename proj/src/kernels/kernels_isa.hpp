#pragma once

#include "hs/kernels.hpp"

// Internal: per-ISA kernel entry points. The AVX2 translation unit is
// compiled with -mavx2 -mfma; call these only after a runtime CPU check.

namespace hs::kernels::avx2 {

bool compiled_in();

cplx dot_w(const double* w, const cplx* u, const cplx* v, std::size_t n);
cplx phase_sum(const cplx* f, std::size_t n, double theta0, double dtheta);
cplx phase_sum_real(const double* f, std::size_t n, double theta0, double dtheta);
void bessel_weights(double* w, std::size_t n, double xi0, double dxi, double s);

} // namespace hs::kernels::avx2

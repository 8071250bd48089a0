#include "kernels_isa.hpp"

#include <atomic>

namespace hs::kernels {

namespace {

std::atomic<bool> g_force_scalar{false};

bool cpu_has_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

bool use_avx2()
{
    static const bool available = avx2::compiled_in() && cpu_has_avx2();
    return available && !g_force_scalar.load(std::memory_order_relaxed);
}

} // namespace

Isa active()
{
    return use_avx2() ? Isa::avx2 : Isa::scalar;
}

const char* isa_name(Isa isa)
{
    switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::scalar: return "scalar";
    }
    return "unknown";
}

void force_scalar(bool on)
{
    g_force_scalar.store(on, std::memory_order_relaxed);
}

cplx dot_w(const double* w, const cplx* u, const cplx* v, std::size_t n)
{
    return use_avx2() ? avx2::dot_w(w, u, v, n) : scalar::dot_w(w, u, v, n);
}

cplx phase_sum(const cplx* f, std::size_t n, double theta0, double dtheta)
{
    return use_avx2() ? avx2::phase_sum(f, n, theta0, dtheta)
                      : scalar::phase_sum(f, n, theta0, dtheta);
}

cplx phase_sum_real(const double* f, std::size_t n, double theta0, double dtheta)
{
    return use_avx2() ? avx2::phase_sum_real(f, n, theta0, dtheta)
                      : scalar::phase_sum_real(f, n, theta0, dtheta);
}

void bessel_weights(double* w, std::size_t n, double xi0, double dxi, double s)
{
    if (use_avx2())
        avx2::bessel_weights(w, n, xi0, dxi, s);
    else
        scalar::bessel_weights(w, n, xi0, dxi, s);
}

} // namespace hs::kernels

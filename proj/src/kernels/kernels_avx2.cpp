#include "kernels_isa.hpp"

#include <cmath>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace hs::kernels::avx2 {

namespace {

constexpr std::size_t kReseedBlocks = 256; // phasor re-seed cadence, in 4-wide blocks

inline double hsum(__m256d v)
{
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return (t[0] + t[1]) + (t[2] + t[3]);
}

// [w0, w0, w1, w1] from two consecutive weights
inline __m256d dup_pairs(const double* w)
{
    const __m128d lo = _mm_loadu_pd(w);
    return _mm256_set_m128d(_mm_unpackhi_pd(lo, lo), _mm_unpacklo_pd(lo, lo));
}

} // namespace

bool compiled_in() { return true; }

cplx dot_w(const double* w, const cplx* u, const cplx* v, std::size_t n)
{
    const double* ud = reinterpret_cast<const double*>(u);
    const double* vd = reinterpret_cast<const double*>(v);
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0); // lanes [+,-,+,-]

    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();

    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d uv = _mm256_loadu_pd(ud + 2 * j); // [ur0, ui0, ur1, ui1]
        const __m256d vv = _mm256_loadu_pd(vd + 2 * j);
        const __m256d wv = dup_pairs(w + j);

        // real lanes: w * (ur*vr + ui*vi), spread over the pair
        acc_re = _mm256_fmadd_pd(_mm256_mul_pd(wv, uv), vv, acc_re);

        // imag lanes: w * (ui*vr - ur*vi)
        const __m256d us = _mm256_permute_pd(uv, 0b0101); // [ui0, ur0, ui1, ur1]
        const __m256d ws = _mm256_mul_pd(wv, sign);
        acc_im = _mm256_fmadd_pd(_mm256_mul_pd(ws, us), vv, acc_im);
    }

    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (; j < n; ++j) {
        const double ur = u[j].real(), ui = u[j].imag();
        const double vr = v[j].real(), vi = v[j].imag();
        re += w[j] * (ur * vr + ui * vi);
        im += w[j] * (ui * vr - ur * vi);
    }
    return {re, im};
}

namespace {

struct Phasor4 {
    __m256d re, im;
    double rot_re, rot_im; // e^{i 4 dtheta}

    void seed(double theta0, double dtheta, std::size_t k)
    {
        alignas(32) double cr[4], ci[4];
        for (int l = 0; l < 4; ++l) {
            const double th = theta0 + static_cast<double>(k + static_cast<std::size_t>(l)) * dtheta;
            cr[l] = std::cos(th);
            ci[l] = std::sin(th);
        }
        re = _mm256_load_pd(cr);
        im = _mm256_load_pd(ci);
    }

    void advance()
    {
        const __m256d c = _mm256_set1_pd(rot_re);
        const __m256d s = _mm256_set1_pd(rot_im);
        const __m256d nre = _mm256_fnmadd_pd(im, s, _mm256_mul_pd(re, c));
        im = _mm256_fmadd_pd(re, s, _mm256_mul_pd(im, c));
        re = nre;
    }
};

} // namespace

cplx phase_sum(const cplx* f, std::size_t n, double theta0, double dtheta)
{
    const double* fd = reinterpret_cast<const double*>(f);

    Phasor4 ph;
    ph.rot_re = std::cos(4.0 * dtheta);
    ph.rot_im = std::sin(4.0 * dtheta);

    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();

    std::size_t k = 0, block = 0;
    for (; k + 4 <= n; k += 4, ++block) {
        if (block % kReseedBlocks == 0)
            ph.seed(theta0, dtheta, k);

        const __m256d a = _mm256_loadu_pd(fd + 2 * k);     // [fr0, fi0, fr1, fi1]
        const __m256d b = _mm256_loadu_pd(fd + 2 * k + 4); // [fr2, fi2, fr3, fi3]
        // deinterleave to [fr0..fr3], [fi0..fi3]
        __m256d fr = _mm256_unpacklo_pd(a, b); // [fr0, fr2, fr1, fr3]
        __m256d fi = _mm256_unpackhi_pd(a, b);
        fr = _mm256_permute4x64_pd(fr, 0b11011000);
        fi = _mm256_permute4x64_pd(fi, 0b11011000);

        // (fr + i fi) * (pr + i pi)
        acc_re = _mm256_fmadd_pd(fr, ph.re, acc_re);
        acc_re = _mm256_fnmadd_pd(fi, ph.im, acc_re);
        acc_im = _mm256_fmadd_pd(fr, ph.im, acc_im);
        acc_im = _mm256_fmadd_pd(fi, ph.re, acc_im);

        ph.advance();
    }

    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (; k < n; ++k) {
        const double th = theta0 + static_cast<double>(k) * dtheta;
        const double pr = std::cos(th), pi = std::sin(th);
        re += f[k].real() * pr - f[k].imag() * pi;
        im += f[k].real() * pi + f[k].imag() * pr;
    }
    return {re, im};
}

cplx phase_sum_real(const double* f, std::size_t n, double theta0, double dtheta)
{
    Phasor4 ph;
    ph.rot_re = std::cos(4.0 * dtheta);
    ph.rot_im = std::sin(4.0 * dtheta);

    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();

    std::size_t k = 0, block = 0;
    for (; k + 4 <= n; k += 4, ++block) {
        if (block % kReseedBlocks == 0)
            ph.seed(theta0, dtheta, k);

        const __m256d fv = _mm256_loadu_pd(f + k);
        acc_re = _mm256_fmadd_pd(fv, ph.re, acc_re);
        acc_im = _mm256_fmadd_pd(fv, ph.im, acc_im);

        ph.advance();
    }

    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (; k < n; ++k) {
        const double th = theta0 + static_cast<double>(k) * dtheta;
        re += f[k] * std::cos(th);
        im += f[k] * std::sin(th);
    }
    return {re, im};
}

void bessel_weights(double* w, std::size_t n, double xi0, double dxi, double s)
{
    const bool is_int = s == std::nearbyint(s) && std::fabs(s) <= 3.0;
    const bool is_half = (s + 0.5) == std::nearbyint(s + 0.5) && std::fabs(s) <= 1.5;

    if (!is_int && !is_half) {
        scalar::bessel_weights(w, n, xi0, dxi, s);
        return;
    }

    const __m256d ones = _mm256_set1_pd(1.0);
    const __m256d dx4 = _mm256_set1_pd(4.0 * dxi);
    __m256d xi = _mm256_set_pd(xi0 + 3 * dxi, xi0 + 2 * dxi, xi0 + dxi, xi0);

    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d t = _mm256_fmadd_pd(xi, xi, ones); // 1 + xi^2
        __m256d r;
        if (is_int) {
            const int p = static_cast<int>(s);
            r = ones;
            for (int q = 0; q < std::abs(p); ++q)
                r = _mm256_mul_pd(r, t);
            if (p < 0)
                r = _mm256_div_pd(ones, r);
        } else {
            // s in {-1.5, -0.5, 0.5, 1.5}
            const __m256d rt = _mm256_sqrt_pd(t);
            if (s == 0.5)
                r = rt;
            else if (s == -0.5)
                r = _mm256_div_pd(ones, rt);
            else if (s == 1.5)
                r = _mm256_mul_pd(t, rt);
            else
                r = _mm256_div_pd(ones, _mm256_mul_pd(t, rt));
        }
        _mm256_storeu_pd(w + j, r);
        xi = _mm256_add_pd(xi, dx4);
    }
    for (; j < n; ++j) {
        const double x = xi0 + static_cast<double>(j) * dxi;
        w[j] = std::pow(1.0 + x * x, s);
    }
}

} // namespace hs::kernels::avx2

#else // !(__AVX2__ && __FMA__)

namespace hs::kernels::avx2 {

bool compiled_in() { return false; }

cplx dot_w(const double* w, const cplx* u, const cplx* v, std::size_t n)
{
    return scalar::dot_w(w, u, v, n);
}

cplx phase_sum(const cplx* f, std::size_t n, double theta0, double dtheta)
{
    return scalar::phase_sum(f, n, theta0, dtheta);
}

cplx phase_sum_real(const double* f, std::size_t n, double theta0, double dtheta)
{
    return scalar::phase_sum_real(f, n, theta0, dtheta);
}

void bessel_weights(double* w, std::size_t n, double xi0, double dxi, double s)
{
    scalar::bessel_weights(w, n, xi0, dxi, s);
}

} // namespace hs::kernels::avx2

#endif

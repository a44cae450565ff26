// AVX2 variants of the amplitude kernels. Compiled with -mavx2 -mfma in a
// separate TU; only reached through the dispatch table after a cpuid check.

#include "aquakern/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace aquakern::simd {
namespace {

// (mr + i*mi) * v for two packed complex doubles.
inline __m256d cmul_scalar_vec(__m256d vr, __m256d vi, __m256d v) {
    const __m256d t1 = _mm256_mul_pd(vr, v);
    const __m256d vswap = _mm256_permute_pd(v, 0b0101);
    const __m256d t2 = _mm256_mul_pd(vi, vswap);
    return _mm256_addsub_pd(t1, t2);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void apply_2x2_avx2(cplx* amps, std::size_t dim, int target, const cplx m[4]) {
    double* p = reinterpret_cast<double*>(amps);
    const __m256d m00r = _mm256_set1_pd(m[0].real());
    const __m256d m00i = _mm256_set1_pd(m[0].imag());
    const __m256d m01r = _mm256_set1_pd(m[1].real());
    const __m256d m01i = _mm256_set1_pd(m[1].imag());
    const __m256d m10r = _mm256_set1_pd(m[2].real());
    const __m256d m10i = _mm256_set1_pd(m[2].imag());
    const __m256d m11r = _mm256_set1_pd(m[3].real());
    const __m256d m11i = _mm256_set1_pd(m[3].imag());
    const std::size_t stride = std::size_t{1} << target;

    if (stride == 1) {
        if (dim < 4) {
            const cplx a0 = amps[0], a1 = amps[1];
            amps[0] = m[0] * a0 + m[1] * a1;
            amps[1] = m[2] * a0 + m[3] * a1;
            return;
        }
        // Amplitude pairs are adjacent; deinterleave two pairs per step.
        for (std::size_t i = 0; i < dim; i += 4) {
            const __m256d v0 = _mm256_loadu_pd(p + 2 * i);
            const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
            const __m256d lo = _mm256_permute2f128_pd(v0, v1, 0x20);
            const __m256d hi = _mm256_permute2f128_pd(v0, v1, 0x31);
            const __m256d n0 = _mm256_add_pd(cmul_scalar_vec(m00r, m00i, lo),
                                             cmul_scalar_vec(m01r, m01i, hi));
            const __m256d n1 = _mm256_add_pd(cmul_scalar_vec(m10r, m10i, lo),
                                             cmul_scalar_vec(m11r, m11i, hi));
            _mm256_storeu_pd(p + 2 * i, _mm256_permute2f128_pd(n0, n1, 0x20));
            _mm256_storeu_pd(p + 2 * i + 4,
                             _mm256_permute2f128_pd(n0, n1, 0x31));
        }
        return;
    }

    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; off += 2) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const __m256d a0 = _mm256_loadu_pd(p + 2 * i0);
            const __m256d a1 = _mm256_loadu_pd(p + 2 * i1);
            const __m256d n0 = _mm256_add_pd(cmul_scalar_vec(m00r, m00i, a0),
                                             cmul_scalar_vec(m01r, m01i, a1));
            const __m256d n1 = _mm256_add_pd(cmul_scalar_vec(m10r, m10i, a0),
                                             cmul_scalar_vec(m11r, m11i, a1));
            _mm256_storeu_pd(p + 2 * i0, n0);
            _mm256_storeu_pd(p + 2 * i1, n1);
        }
    }
}

cplx inner_product_avx2(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        // re: sum(ar*br + ai*bi); im: sum(ar*bi - ai*br)
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        const __m256d bswap = _mm256_permute_pd(vb, 0b0101);
        acc_im = _mm256_fmadd_pd(_mm256_mul_pd(va, bswap), sign, acc_im);
    }
    cplx acc{hsum(acc_re), hsum(acc_im)};
    for (; i < n; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double squared_norm_avx2(const cplx* a, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(pa + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::norm(a[i]);
    return s;
}

}  // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{apply_2x2_avx2, inner_product_avx2,
                                   squared_norm_avx2, "avx2"};
    return table;
}

}  // namespace aquakern::simd

#else

namespace aquakern::simd {
const KernelTable& avx2_kernels() { return scalar_kernels(); }
}  // namespace aquakern::simd

#endif

// Low-level amplitude kernels: scalar reference implementations plus an
// AVX2 variant selected at runtime. All higher-level quantum operations
// route their inner loops through the active table so the two backends
// can be equivalence-tested against each other.

#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace aquakern::simd {

using cplx = std::complex<double>;

// In-place application of a 2x2 complex matrix {m00,m01,m10,m11} to the
// target-qubit amplitude pairs of a 2^n statevector (little-endian:
// qubit 0 is the least significant bit of the basis index).
using Apply2x2Fn = void (*)(cplx* amps, std::size_t dim, int target,
                            const cplx m[4]);

// Returns sum_i conj(a[i]) * b[i].
using InnerProductFn = cplx (*)(const cplx* a, const cplx* b, std::size_t n);

// Returns sum_i |a[i]|^2.
using SquaredNormFn = double (*)(const cplx* a, std::size_t n);

struct KernelTable {
    Apply2x2Fn apply_2x2;
    InnerProductFn inner_product;
    SquaredNormFn squared_norm;
    const char* name;
};

enum class Backend { scalar, avx2 };

const KernelTable& scalar_kernels();
bool avx2_available();
const KernelTable& avx2_kernels();  // valid only if avx2_available()

// Active table: AVX2 when the CPU supports it, scalar otherwise.
// AQUAKERN_SIMD=scalar|avx2 overrides detection (checked once).
const KernelTable& active_kernels();
void set_backend(Backend b);

}  // namespace aquakern::simd

#include "aquakern/simd/kernels.hpp"

namespace aquakern::simd {
namespace {

void apply_2x2_scalar(cplx* amps, std::size_t dim, int target,
                      const cplx m[4]) {
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const cplx a0 = amps[i0];
            const cplx a1 = amps[i1];
            amps[i0] = m[0] * a0 + m[1] * a1;
            amps[i1] = m[2] * a0 + m[3] * a1;
        }
    }
}

cplx inner_product_scalar(const cplx* a, const cplx* b, std::size_t n) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double squared_norm_scalar(const cplx* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(a[i]);
    return acc;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{apply_2x2_scalar, inner_product_scalar,
                                   squared_norm_scalar, "scalar"};
    return table;
}

}  // namespace aquakern::simd

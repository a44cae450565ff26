#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aquakern/encoding.hpp"

namespace aquakern::kernels {

using encoding::FeatureVector;

enum class KernelKind { linear, polynomial, rbf, quantum };

// Kernel description. beta is the scaling parameter, r the coefficient and
// degree the exponent of the polynomial kernel. The quantum kind evaluates
// |<psi(x)|psi(z)>|^2 over the configured feature map, either exactly or as
// a shot-frequency estimate when `shots` is set.
struct KernelSpec {
    KernelKind kind = KernelKind::rbf;
    double beta = 1.0;
    double r = 0.0;
    int degree = 3;
    encoding::FeatureMapSpec feature_map;
    std::optional<long> shots;
    std::uint64_t shot_seed = 0;

    static KernelSpec linear() { return {KernelKind::linear}; }
    static KernelSpec polynomial(double beta, double r, int degree) {
        KernelSpec s{KernelKind::polynomial};
        s.beta = beta;
        s.r = r;
        s.degree = degree;
        return s;
    }
    static KernelSpec rbf(double beta) {
        KernelSpec s{KernelKind::rbf};
        s.beta = beta;
        return s;
    }
    static KernelSpec quantum(encoding::FeatureMapSpec map) {
        KernelSpec s{KernelKind::quantum};
        s.feature_map = map;
        return s;
    }
};

struct KernelMatrix {
    int n = 0;
    std::vector<double> entries;  // row-major n x n
    KernelSpec spec;

    double at(int i, int j) const { return entries[i * n + j]; }
    double symmetry_residual() const;  // max |K - K^T|
    double min_eigenvalue() const;
};

struct RectMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> entries;  // row-major

    double at(int r, int c) const { return entries[r * cols + c]; }
};

// Single kernel evaluation. pair_seed feeds the per-pair shot stream for
// shot-based quantum kernels and is ignored otherwise.
double kernel_value(const FeatureVector& x, const FeatureVector& z,
                    const KernelSpec& spec, std::uint64_t pair_a = 0,
                    std::uint64_t pair_b = 0);

// Gram matrix over the dataset; upper triangle computed (in parallel) and
// mirrored, so the result is symmetric by construction.
KernelMatrix gram_matrix(const std::vector<FeatureVector>& xs,
                         const KernelSpec& spec);

// entries[i][j] = K(train_i, test_j).
RectMatrix cross_gram(const std::vector<FeatureVector>& train,
                      const std::vector<FeatureVector>& test,
                      const KernelSpec& spec);

// Documented default for the rbf scale: 1 / (d * Var(all feature values)).
double default_rbf_beta(const std::vector<FeatureVector>& xs);

}  // namespace aquakern::kernels

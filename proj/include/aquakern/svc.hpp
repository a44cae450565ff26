#pragma once

#include <cstdint>
#include <vector>

#include "aquakern/kernels.hpp"

namespace aquakern::svc {

using encoding::FeatureVector;

struct SvmTrainConfig {
    double C = 1.0;
    double tolerance = 1e-3;
    int max_passes = 200;
    std::uint64_t seed = 0;
};

// Trained soft-margin SVM over a precomputed kernel. Labels are {-1,+1};
// prediction ties (score exactly 0) resolve to +1.
struct SvmModel {
    std::vector<double> alphas;
    double bias = 0.0;
    std::vector<int> support_indices;
    std::vector<int> labels;
    kernels::KernelSpec kernel_spec;
    std::vector<FeatureVector> training_points;
    double C = 0.0;
};

// Sequential minimal optimization on the dual. Throws
// std::invalid_argument on dimension mismatch and a degenerate-problem
// error (std::invalid_argument) when only one class is present.
SvmModel train_svm(const kernels::KernelMatrix& gram,
                   const std::vector<int>& labels,
                   const SvmTrainConfig& config);

// Convenience: builds the Gram matrix and attaches the training points so
// the model can score new inputs.
SvmModel train_svm(const std::vector<FeatureVector>& xs,
                   const std::vector<int>& labels,
                   const kernels::KernelSpec& kernel,
                   const SvmTrainConfig& config);

// f(x) = sum_i alpha_i y_i K(x_i, x) + b
double decision_value(const SvmModel& model, const FeatureVector& x);

std::vector<double> decision_values(const SvmModel& model,
                                    const std::vector<FeatureVector>& xs);

// sign of the decision value; sign(0) = +1.
std::vector<int> predict(const SvmModel& model,
                         const std::vector<FeatureVector>& xs);

// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij,
// exposed for oracle comparisons.
double dual_objective(const kernels::KernelMatrix& gram,
                      const std::vector<int>& labels,
                      const std::vector<double>& alphas);

}  // namespace aquakern::svc

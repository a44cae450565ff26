#include "aquakern/svc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace aquakern::svc {
namespace {

struct SmoState {
    const kernels::KernelMatrix& gram;
    const std::vector<int>& y;
    double C;
    double tol;
    std::vector<double> alpha;
    std::vector<double> error;  // E_i = g_i + b - y_i
    double b = 0.0;
    std::mt19937_64 eng;

    double k(int i, int j) const { return gram.at(i, j); }

    double g(int i) const {
        double s = 0.0;
        const int n = gram.n;
        for (int j = 0; j < n; ++j)
            if (alpha[j] != 0.0) s += alpha[j] * y[j] * k(j, i);
        return s;
    }

    bool take_step(int i1, int i2) {
        if (i1 == i2) return false;
        const double a1 = alpha[i1], a2 = alpha[i2];
        const int y1 = y[i1], y2 = y[i2];
        const double e1 = error[i1], e2 = error[i2];
        const double s = y1 * y2;
        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(C, C + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - C);
            hi = std::min(C, a1 + a2);
        }
        if (lo >= hi) return false;
        const double eta = k(i1, i1) + k(i2, i2) - 2.0 * k(i1, i2);
        double a2_new;
        if (eta > 1e-12) {
            a2_new = a2 + y2 * (e1 - e2) / eta;
            a2_new = std::clamp(a2_new, lo, hi);
        } else {
            // Flat direction: evaluate the objective at both clip ends.
            const double f1 = y1 * e1 - a1 * k(i1, i1) - s * a2 * k(i1, i2);
            const double f2 = y2 * e2 - s * a1 * k(i1, i2) - a2 * k(i2, i2);
            const double l1 = a1 + s * (a2 - lo);
            const double h1 = a1 + s * (a2 - hi);
            const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k(i1, i1) +
                                  0.5 * lo * lo * k(i2, i2) +
                                  s * lo * l1 * k(i1, i2);
            const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k(i1, i1) +
                                  0.5 * hi * hi * k(i2, i2) +
                                  s * hi * h1 * k(i1, i2);
            if (obj_lo < obj_hi - 1e-12)
                a2_new = lo;
            else if (obj_hi < obj_lo - 1e-12)
                a2_new = hi;
            else
                a2_new = a2;
        }
        if (std::abs(a2_new - a2) < 1e-12 * (a2_new + a2 + 1e-12)) return false;
        double a1_new = a1 + s * (a2 - a2_new);
        // Snap to the box bounds so roundoff residue never masquerades as a
        // free support vector (the bias rule keys on 0 < alpha < C).
        const double snap = 1e-10 * C;
        if (a1_new < snap) a1_new = 0.0;
        if (a1_new > C - snap) a1_new = C;
        if (a2_new < snap) a2_new = 0.0;
        if (a2_new > C - snap) a2_new = C;

        const double b1 = b - e1 - y1 * (a1_new - a1) * k(i1, i1) -
                          y2 * (a2_new - a2) * k(i1, i2);
        const double b2 = b - e2 - y1 * (a1_new - a1) * k(i1, i2) -
                          y2 * (a2_new - a2) * k(i2, i2);
        double b_new;
        if (a1_new > 0.0 && a1_new < C)
            b_new = b1;
        else if (a2_new > 0.0 && a2_new < C)
            b_new = b2;
        else
            b_new = 0.5 * (b1 + b2);

        const double db = b_new - b;
        const int n = gram.n;
        for (int j = 0; j < n; ++j)
            error[j] += y1 * (a1_new - a1) * k(i1, j) +
                        y2 * (a2_new - a2) * k(i2, j) + db;
        alpha[i1] = a1_new;
        alpha[i2] = a2_new;
        b = b_new;
        return true;
    }

    bool examine(int i2) {
        const int n = gram.n;
        const double e2 = error[i2];
        const double r2 = e2 * y[i2];
        const bool violates = (r2 < -tol && alpha[i2] < C) ||
                              (r2 > tol && alpha[i2] > 0.0);
        if (!violates) return false;

        // Second choice: maximize |E1 - E2| over non-bound points.
        int best = -1;
        double best_gap = -1.0;
        for (int i = 0; i < n; ++i) {
            if (alpha[i] > 0.0 && alpha[i] < C) {
                const double gap = std::abs(error[i] - e2);
                if (gap > best_gap) {
                    best_gap = gap;
                    best = i;
                }
            }
        }
        if (best >= 0 && take_step(best, i2)) return true;

        std::uniform_int_distribution<int> start_dist(0, n - 1);
        int start = start_dist(eng);
        for (int d = 0; d < n; ++d) {
            const int i1 = (start + d) % n;
            if (alpha[i1] > 0.0 && alpha[i1] < C && take_step(i1, i2))
                return true;
        }
        start = start_dist(eng);
        for (int d = 0; d < n; ++d) {
            if (take_step((start + d) % n, i2)) return true;
        }
        return false;
    }
};

}  // namespace

double dual_objective(const kernels::KernelMatrix& gram,
                      const std::vector<int>& labels,
                      const std::vector<double>& alphas) {
    const int n = gram.n;
    double obj = 0.0;
    for (int i = 0; i < n; ++i) obj += alphas[i];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            obj -= 0.5 * alphas[i] * alphas[j] * labels[i] * labels[j] *
                   gram.at(i, j);
    return obj;
}

SvmModel train_svm(const kernels::KernelMatrix& gram,
                   const std::vector<int>& labels,
                   const SvmTrainConfig& config) {
    const int n = gram.n;
    if (static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("train_svm: label count != gram dimension");
    if (config.C <= 0.0 || config.tolerance <= 0.0)
        throw std::invalid_argument("train_svm: C and tolerance must be > 0");
    bool has_pos = false, has_neg = false;
    for (int y : labels) {
        if (y == 1)
            has_pos = true;
        else if (y == -1)
            has_neg = true;
        else
            throw std::invalid_argument("train_svm: labels must be in {-1,+1}");
    }
    if (!has_pos || !has_neg)
        throw std::invalid_argument(
            "train_svm: degenerate problem, only one class present");

    SmoState state{gram, labels, config.C, config.tolerance,
                   std::vector<double>(n, 0.0), std::vector<double>(n),
                   0.0,  std::mt19937_64(config.seed)};
    for (int i = 0; i < n; ++i) state.error[i] = -labels[i];

    int num_changed = 0;
    bool examine_all = true;
    int passes = 0;
    while ((num_changed > 0 || examine_all) && passes < config.max_passes) {
        num_changed = 0;
        if (examine_all) {
            for (int i = 0; i < n; ++i) num_changed += state.examine(i);
        } else {
            for (int i = 0; i < n; ++i)
                if (state.alpha[i] > 0.0 && state.alpha[i] < config.C)
                    num_changed += state.examine(i);
        }
        if (examine_all)
            examine_all = false;
        else if (num_changed == 0)
            examine_all = true;
        ++passes;
    }

    // Final bias from the converged alphas: average over unbounded support
    // vectors, midpoint of the feasible interval otherwise.
    std::vector<double> margins(n);
    for (int i = 0; i < n; ++i) margins[i] = state.g(i);
    double bias;
    double free_sum = 0.0;
    int free_count = 0;
    for (int i = 0; i < n; ++i) {
        if (state.alpha[i] > 0.0 && state.alpha[i] < config.C) {
            free_sum += labels[i] - margins[i];
            ++free_count;
        }
    }
    if (free_count > 0) {
        bias = free_sum / free_count;
    } else {
        double hi = std::numeric_limits<double>::infinity();
        double lo = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const double f = labels[i] - margins[i];
            const bool in_up = (labels[i] == 1 && state.alpha[i] < config.C) ||
                               (labels[i] == -1 && state.alpha[i] > 0.0);
            const bool in_low = (labels[i] == -1 && state.alpha[i] < config.C) ||
                                (labels[i] == 1 && state.alpha[i] > 0.0);
            if (in_up) hi = std::min(hi, f);
            if (in_low) lo = std::max(lo, f);
        }
        bias = (std::isfinite(hi) && std::isfinite(lo)) ? 0.5 * (hi + lo) : 0.0;
    }

    SvmModel model;
    model.alphas = state.alpha;
    model.bias = bias;
    model.labels = labels;
    model.kernel_spec = gram.spec;
    model.C = config.C;
    for (int i = 0; i < n; ++i)
        if (model.alphas[i] > 0.0) model.support_indices.push_back(i);
    return model;
}

SvmModel train_svm(const std::vector<FeatureVector>& xs,
                   const std::vector<int>& labels,
                   const kernels::KernelSpec& kernel,
                   const SvmTrainConfig& config) {
    SvmModel model = train_svm(kernels::gram_matrix(xs, kernel), labels, config);
    model.training_points = xs;
    return model;
}

double decision_value(const SvmModel& model, const FeatureVector& x) {
    if (model.training_points.empty())
        throw std::invalid_argument(
            "decision_value: model carries no training points");
    if (x.size() != model.training_points[0].size())
        throw std::invalid_argument("decision_value: feature length mismatch");
    double score = model.bias;
    for (int i : model.support_indices)
        score += model.alphas[i] * model.labels[i] *
                 kernels::kernel_value(model.training_points[i], x,
                                       model.kernel_spec);
    return score;
}

std::vector<double> decision_values(const SvmModel& model,
                                    const std::vector<FeatureVector>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(decision_value(model, x));
    return out;
}

std::vector<int> predict(const SvmModel& model,
                         const std::vector<FeatureVector>& xs) {
    std::vector<int> out;
    out.reserve(xs.size());
    for (const auto& x : xs)
        out.push_back(decision_value(model, x) >= 0.0 ? 1 : -1);
    return out;
}

}  // namespace aquakern::svc

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "aquakern/svc.hpp"

using namespace aquakern;
using kernels::KernelSpec;
using svc::SvmTrainConfig;

namespace {

// Exact Euclidean projection of v onto {0 <= a <= C, sum(a_i y_i) = 0}.
// The projection is clip(v_i - lambda*y_i, 0, C) for the lambda that zeros
// the equality constraint; the constraint value is monotone in lambda, so
// bisection finds it.
std::vector<double> project_feasible(std::vector<double> v,
                                     const std::vector<int>& labels, double C) {
    const auto constraint = [&](double lambda) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += std::clamp(v[i] - lambda * labels[i], 0.0, C) * labels[i];
        return s;
    };
    double lo = -1e6, hi = 1e6;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (constraint(mid) > 0.0 ? lo : hi) = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::clamp(v[i] - lambda * labels[i], 0.0, C);
    return v;
}

// Projected-gradient ascent on the dual; slow but dependable on tiny
// problems.
std::vector<double> projected_gradient_oracle(const kernels::KernelMatrix& gram,
                                              const std::vector<int>& labels,
                                              double C) {
    const int n = gram.n;
    std::vector<double> alpha(n, 0.0);
    const double step = 5e-3;
    for (int iter = 0; iter < 200000; ++iter) {
        std::vector<double> grad(n);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j)
                s += alpha[j] * labels[i] * labels[j] * gram.at(i, j);
            grad[i] = 1.0 - s;
        }
        for (int i = 0; i < n; ++i) alpha[i] += step * grad[i];
        alpha = project_feasible(std::move(alpha), labels, C);
    }
    return alpha;
}

}  // namespace

TEST_CASE("analytic two-point problem") {
    SvmTrainConfig config;
    config.C = 10.0;
    const auto model = svc::train_svm({{-1.0}, {1.0}}, {-1, 1},
                                      KernelSpec::linear(), config);
    REQUIRE(model.alphas.size() == 2);
    CHECK(model.alphas[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(model.alphas[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(model.bias == doctest::Approx(0.0).scale(1).epsilon(1e-6));
    CHECK(svc::decision_value(model, {2.0}) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(svc::decision_value(model, {-0.3}) ==
          doctest::Approx(-0.3).epsilon(1e-6));
    CHECK(model.support_indices.size() == 2);
}

TEST_CASE("degenerate single-class input throws") {
    CHECK_THROWS_AS(svc::train_svm({{0.0}, {1.0}}, {1, 1},
                                   KernelSpec::linear(), SvmTrainConfig{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(svc::train_svm({{0.0}, {1.0}}, {1},
                                   KernelSpec::linear(), SvmTrainConfig{}),
                    std::invalid_argument);
}

TEST_CASE("smo matches the projected-gradient dual oracle") {
    std::mt19937_64 eng(47);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<std::vector<double>> xs;
        std::vector<int> labels;
        for (int i = 0; i < 8; ++i) {
            const int y = i < 4 ? 1 : -1;
            xs.push_back({dist(eng) + 0.8 * y, dist(eng)});
            labels.push_back(y);
        }
        const auto gram = kernels::gram_matrix(xs, KernelSpec::rbf(1.0));
        SvmTrainConfig config;
        config.C = 1.0;
        config.seed = 1000 + trial;
        const auto model = svc::train_svm(gram, labels, config);

        const auto oracle = projected_gradient_oracle(gram, labels, config.C);
        const double obj_smo = svc::dual_objective(gram, labels, model.alphas);
        const double obj_pg = svc::dual_objective(gram, labels, oracle);
        CHECK(std::abs(obj_smo - obj_pg) <= 1e-4);

        // Constraints: box exactly, equality to tight tolerance.
        double eq = 0.0;
        for (int i = 0; i < 8; ++i) {
            CHECK(model.alphas[i] >= 0.0);
            CHECK(model.alphas[i] <= config.C);
            eq += model.alphas[i] * labels[i];
        }
        CHECK(std::abs(eq) < 1e-6);

        // KKT at the solver tolerance: y_i f(x_i) vs 1 by alpha regime.
        for (int i = 0; i < 8; ++i) {
            double f = model.bias;
            for (int j = 0; j < 8; ++j)
                f += model.alphas[j] * labels[j] * gram.at(i, j);
            const double margin = labels[i] * f;
            if (model.alphas[i] < 1e-8)
                CHECK(margin >= 1.0 - 1e-2);
            else if (model.alphas[i] > config.C - 1e-8)
                CHECK(margin <= 1.0 + 1e-2);
            else
                CHECK(margin == doctest::Approx(1.0).epsilon(1e-2));
        }
    }
}

TEST_CASE("prediction sign convention and batch scoring") {
    SvmTrainConfig config;
    config.C = 10.0;
    const auto model = svc::train_svm({{-1.0}, {1.0}}, {-1, 1},
                                      KernelSpec::linear(), config);
    const auto preds = svc::predict(model, {{2.0}, {-2.0}, {0.0}});
    CHECK(preds[0] == 1);
    CHECK(preds[1] == -1);
    CHECK(preds[2] == 1);  // exact zero resolves positive
    const auto scores = svc::decision_values(model, {{2.0}, {-2.0}});
    CHECK(scores[0] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(scores[1] == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("training is deterministic for a fixed seed") {
    std::mt19937_64 eng(53);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<std::vector<double>> xs;
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) {
        const int y = i % 2 == 0 ? 1 : -1;
        xs.push_back({dist(eng) + 0.5 * y, dist(eng)});
        labels.push_back(y);
    }
    SvmTrainConfig config;
    config.seed = 77;
    const auto a = svc::train_svm(xs, labels, KernelSpec::rbf(1.0), config);
    const auto b = svc::train_svm(xs, labels, KernelSpec::rbf(1.0), config);
    CHECK(a.alphas == b.alphas);
    CHECK(a.bias == b.bias);
    CHECK(a.support_indices == b.support_indices);
}

TEST_CASE("quantum-kernel svm separates orthogonal encodings") {
    SvmTrainConfig config;
    config.C = 1.0;
    const auto spec =
        KernelSpec::quantum(encoding::FeatureMapSpec::angle_map(1));
    const auto model = svc::train_svm({{0.0}, {M_PI / 2}}, {1, -1}, spec, config);
    const auto preds = svc::predict(model, {{0.1}, {M_PI / 2 - 0.1}});
    CHECK(preds[0] == 1);
    CHECK(preds[1] == -1);
}

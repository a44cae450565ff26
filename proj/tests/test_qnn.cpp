#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "aquakern/qnn.hpp"

using namespace aquakern;
using encoding::FeatureMapSpec;
using qnn::OptimizerKind;
using qnn::QnnConfig;

namespace {

QnnConfig single_ry_config() {
    QnnConfig config;
    config.ansatz.num_qubits = 1;
    config.ansatz.layers = 1;
    config.ansatz.rotation_pattern = {quantum::GateKind::RY};
    config.ansatz.entangler = false;
    config.observable = "Z";
    config.encoding = FeatureMapSpec::angle_map(1);
    return config;
}

double population_variance(const std::vector<double>& v) {
    const double mean =
        std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / double(v.size());
}

}  // namespace

TEST_CASE("xavier initialization") {
    CHECK_THROWS_AS(qnn::xavier_init(0, 0, 4, 1), std::invalid_argument);

    // fan 3/3 -> bound 1, fan 6/6 -> bound sqrt(0.5)
    const auto a = qnn::xavier_init(3, 3, 100000, 11);
    for (double v : a) CHECK(std::abs(v) <= 1.0);
    CHECK(population_variance(a) == doctest::Approx(1.0 / 3.0).epsilon(0.02));

    const auto b = qnn::xavier_init(6, 6, 1000, 12);
    const double bound = std::sqrt(0.5);
    for (double v : b) CHECK(std::abs(v) <= bound);

    CHECK(qnn::xavier_init(3, 3, 16, 5) == qnn::xavier_init(3, 3, 16, 5));
    CHECK(qnn::xavier_init(3, 3, 16, 5) != qnn::xavier_init(3, 3, 16, 6));
}

TEST_CASE("forward evaluation reference points") {
    SUBCASE("zero-layer ansatz on the ground state") {
        auto config = single_ry_config();
        config.ansatz.layers = 0;
        const auto r = qnn::qnn_forward_detail({0.0}, {}, config);
        CHECK(r.raw_expectation == doctest::Approx(1.0));
        CHECK(r.output == doctest::Approx(1.0));
    }
    SUBCASE("single RY rotates <Z> to cos(theta)") {
        const auto config = single_ry_config();
        const auto r = qnn::qnn_forward_detail({0.0}, {1.0}, config);
        CHECK(r.raw_expectation == doctest::Approx(std::cos(1.0)).epsilon(1e-10));
        CHECK(r.raw_expectation == doctest::Approx(0.5403).epsilon(1e-4));
        CHECK(r.output == doctest::Approx((std::cos(1.0) + 1) / 2));
    }
    SUBCASE("full depolarizing wipes the expectation") {
        auto config = single_ry_config();
        config.noise.push_back(
            {quantum::NoiseChannel::Kind::depolarizing, 1.0, 0});
        for (double theta : {0.0, 0.4, 2.2}) {
            const auto r = qnn::qnn_forward_detail({0.0}, {theta}, config);
            CHECK(std::abs(r.raw_expectation) < 1e-12);
        }
    }
    SUBCASE("parameter length mismatch throws") {
        CHECK_THROWS_AS(qnn::qnn_forward({0.0}, {1.0, 2.0}, single_ry_config()),
                        std::invalid_argument);
    }
    SUBCASE("raw expectation stays in [-1, 1] with and without noise") {
        auto config = single_ry_config();
        config.ansatz.num_qubits = 2;
        config.ansatz.rotation_pattern = {quantum::GateKind::RY,
                                          quantum::GateKind::RZ};
        config.ansatz.entangler = true;
        config.encoding = FeatureMapSpec::angle_map(2);
        config.observable = "ZZ";
        std::mt19937_64 eng(61);
        std::uniform_real_distribution<double> dist(-3.0, 3.0);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> x{dist(eng), dist(eng)};
            std::vector<double> params(config.total_parameter_count());
            for (auto& p : params) p = dist(eng);
            config.noise.clear();
            const auto clean = qnn::qnn_forward_detail(x, params, config);
            CHECK(std::abs(clean.raw_expectation) <= 1.0 + 1e-12);
            config.noise.push_back(
                {quantum::NoiseChannel::Kind::amplitude_damping, 0.3, 1});
            const auto noisy = qnn::qnn_forward_detail(x, params, config);
            CHECK(std::abs(noisy.raw_expectation) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("mse loss") {
    CHECK(qnn::mse_loss({0.0, 1.0}, {0, 1}) == doctest::Approx(0.0));
    CHECK(qnn::mse_loss({0.5, 0.5}, {0, 1}) == doctest::Approx(0.25));
    CHECK_THROWS_AS(qnn::mse_loss({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(qnn::mse_loss({0.5}, {0, 1}), std::invalid_argument);
}

TEST_CASE("parameter-shift gradient") {
    const auto config = single_ry_config();
    SUBCASE("analytic single-qubit values") {
        CHECK(qnn::parameter_shift_gradient({0.0}, {0.0}, config, 0) ==
              doctest::Approx(0.0).scale(1).epsilon(1e-12));
        CHECK(qnn::parameter_shift_gradient({0.0}, {M_PI / 2}, config, 0) ==
              doctest::Approx(-1.0).epsilon(1e-10));
    }
    SUBCASE("index out of range throws") {
        CHECK_THROWS_AS(qnn::parameter_shift_gradient({0.0}, {0.0}, config, 1),
                        std::invalid_argument);
    }
    SUBCASE("matches central finite differences on a layered circuit") {
        QnnConfig c;
        c.ansatz.num_qubits = 2;
        c.ansatz.layers = 2;
        c.ansatz.rotation_pattern = {quantum::GateKind::RY,
                                     quantum::GateKind::RZ};
        c.ansatz.entangler = true;
        c.observable = "ZZ";
        c.encoding = FeatureMapSpec::angle_map(2);
        std::mt19937_64 eng(67);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        const double h = 1e-5;
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<double> x{dist(eng), dist(eng)};
            std::vector<double> params(c.circuit_parameter_count());
            for (auto& p : params) p = dist(eng);
            for (int idx = 0; idx < c.circuit_parameter_count(); ++idx) {
                auto plus = params, minus = params;
                plus[idx] += h;
                minus[idx] -= h;
                const double fd =
                    (qnn::qnn_forward_detail(x, plus, c).raw_expectation -
                     qnn::qnn_forward_detail(x, minus, c).raw_expectation) /
                    (2 * h);
                const double shift =
                    qnn::parameter_shift_gradient(x, params, c, idx);
                CHECK(std::abs(shift - fd) < 1e-5);
            }
        }
    }
}

TEST_CASE("optimizer steps") {
    qnn::OptimizerState state;
    SUBCASE("gradient descent") {
        const auto out =
            qnn::optimizer_step({1.0}, {2.0}, state, OptimizerKind::gd, 0.1);
        CHECK(out[0] == doctest::Approx(0.8));
    }
    SUBCASE("adam first step approximates a signed step") {
        const auto out =
            qnn::optimizer_step({1.0}, {2.0}, state, OptimizerKind::adam, 0.001);
        CHECK(out[0] == doctest::Approx(0.999).epsilon(1e-6));
    }
    SUBCASE("rmsprop first step against the hand-rolled update") {
        const auto out = qnn::optimizer_step({1.0}, {2.0}, state,
                                             OptimizerKind::rmsprop, 0.01);
        const double v = 0.1 * 4.0;
        CHECK(out[0] == doctest::Approx(1.0 - 0.01 * 2.0 / std::sqrt(v + 1e-8)));
    }
    SUBCASE("zero gradient leaves parameters unchanged") {
        for (auto kind :
             {OptimizerKind::gd, OptimizerKind::adam, OptimizerKind::rmsprop}) {
            qnn::OptimizerState s;
            const auto out = qnn::optimizer_step({0.3, -0.7}, {0.0, 0.0}, s,
                                                 kind, 0.1);
            CHECK(out[0] == doctest::Approx(0.3));
            CHECK(out[1] == doctest::Approx(-0.7));
        }
    }
    SUBCASE("length mismatch and simplex misuse throw") {
        CHECK_THROWS_AS(
            qnn::optimizer_step({1.0}, {1.0, 2.0}, state, OptimizerKind::gd, 0.1),
            std::invalid_argument);
        CHECK_THROWS_AS(qnn::optimizer_step({1.0}, {1.0}, state,
                                            OptimizerKind::simplex, 0.1),
                        std::invalid_argument);
    }
}

TEST_CASE("nelder-mead minimizes a convex quadratic") {
    const auto loss = [](const qnn::ParameterVector& p) {
        return (p[0] - 1.5) * (p[0] - 1.5) + 2.0 * (p[1] + 0.5) * (p[1] + 0.5);
    };
    qnn::NelderMead nm({0.0, 0.0}, 0.5, loss);
    for (int i = 0; i < 200; ++i) nm.iterate(loss);
    CHECK(nm.best_loss() < 1e-8);
    CHECK(nm.best()[0] == doctest::Approx(1.5).epsilon(1e-3));
    CHECK(nm.best()[1] == doctest::Approx(-0.5).epsilon(1e-3));
}

TEST_CASE("diagnostics") {
    CHECK(qnn::dead_neuron_check({0.5, 0.5, 0.5}) == qnn::NeuronVerdict::dead);
    CHECK(qnn::dead_neuron_check({0.4, 0.6}) == qnn::NeuronVerdict::healthy);
    CHECK_THROWS_AS(qnn::dead_neuron_check({0.5}), std::invalid_argument);

    std::vector<double> flat(50, 0.4996);
    CHECK(qnn::loss_plateau(flat));
    std::vector<double> moving(50);
    for (int i = 0; i < 50; ++i) moving[i] = 1.0 / (1 + i);
    CHECK_FALSE(qnn::loss_plateau(moving));
    CHECK_FALSE(qnn::loss_plateau({0.4996, 0.4996}));  // shorter than window
}

TEST_CASE("training the one-qubit toy task") {
    auto config = single_ry_config();
    config.optimizer = OptimizerKind::adam;
    config.learning_rate = 0.01;
    config.epochs = 200;
    config.seed = 7;
    const std::vector<qnn::FeatureVector> xs{{0.0}, {M_PI / 2}};
    const std::vector<int> targets{0, 1};
    const auto model = qnn::train_qnn(xs, targets, config);
    REQUIRE(model.history.size() == 200);
    CHECK(model.history.back().loss <= 0.05);
    CHECK_FALSE(model.diagnostics.dead_neuron);

    const auto outs = qnn::qnn_outputs(model, xs);
    CHECK(outs[0] < 0.5);
    CHECK(outs[1] > 0.5);

    // Bitwise reproducibility for a fixed seed.
    const auto again = qnn::train_qnn(xs, targets, config);
    CHECK(again.parameters == model.parameters);
    REQUIRE(again.history.size() == model.history.size());
    CHECK(again.history.back().loss == model.history.back().loss);
}

TEST_CASE("training edge cases") {
    auto config = single_ry_config();
    config.epochs = 1;
    const auto model = qnn::train_qnn({{0.0}, {M_PI / 2}}, {0, 1}, config);
    CHECK(model.history.size() == 1);

    config.epochs = 0;
    CHECK_THROWS_AS(qnn::train_qnn({{0.0}}, {0}, config), std::invalid_argument);
    config.epochs = 1;
    CHECK_THROWS_AS(qnn::train_qnn({}, {}, config), std::invalid_argument);
}

TEST_CASE("full depolarizing noise produces the dead diagnostic") {
    auto config = single_ry_config();
    config.epochs = 15;
    config.seed = 9;
    config.noise.push_back({quantum::NoiseChannel::Kind::depolarizing, 1.0, 0});
    const auto model = qnn::train_qnn({{0.0}, {M_PI / 2}}, {0, 1}, config);
    CHECK(model.diagnostics.dead_neuron);
    CHECK(model.diagnostics.plateau);
}

TEST_CASE("classical head changes the output path but trains") {
    auto config = single_ry_config();
    config.classical_head = qnn::ClassicalHeadSpec{3};
    config.epochs = 40;
    config.seed = 13;
    config.learning_rate = 0.05;
    const auto model =
        qnn::train_qnn({{0.0}, {M_PI / 2}}, {0, 1}, config);
    REQUIRE(int(model.parameters.size()) == config.total_parameter_count());
    CHECK(model.history.front().loss >= model.history.back().loss);
    const auto outs = qnn::qnn_outputs(model, {{0.0}, {M_PI / 2}});
    for (double o : outs) {
        CHECK(o >= 0.0);
        CHECK(o <= 1.0);
    }
}

TEST_CASE("simplex optimizer slot trains via the simplex loop") {
    auto config = single_ry_config();
    config.optimizer = OptimizerKind::simplex;
    config.epochs = 120;
    config.seed = 17;
    const auto model = qnn::train_qnn({{0.0}, {M_PI / 2}}, {0, 1}, config);
    CHECK(model.history.back().loss <= model.history.front().loss);
}

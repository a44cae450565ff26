#include <doctest.h>

#include <cmath>
#include <random>

#include "aquakern/encoding.hpp"

using namespace aquakern;
using encoding::EncodingScheme;
using encoding::FeatureMapSpec;

TEST_CASE("angle encoding basis cases") {
    const auto zero = encoding::encode_angle({0.0});
    CHECK(std::abs(zero.amp(0) - quantum::cplx{1, 0}) < 1e-12);

    const auto one = encoding::encode_angle({M_PI / 2});
    CHECK(std::abs(one.amp(1) - quantum::cplx{1, 0}) < 1e-12);

    // First feature on qubit 0, second on qubit 1.
    const auto pair = encoding::encode_angle({M_PI / 4, 0.0});
    CHECK(pair.amp(0b00).real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(pair.amp(0b01).real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(std::abs(pair.amp(0b10)) < 1e-12);
    CHECK(std::abs(pair.amp(0b11)) < 1e-12);

    CHECK_THROWS_AS(encoding::encode_angle({}), std::invalid_argument);
    CHECK_THROWS_AS(encoding::encode_angle({std::nan("")}),
                    std::invalid_argument);
}

TEST_CASE("amplitude encoding") {
    const auto basis = encoding::encode_amplitude({1.0, 0.0});
    CHECK(std::abs(basis.amp(0) - quantum::cplx{1, 0}) < 1e-12);

    const auto plus = encoding::encode_amplitude({1.0, 1.0});
    CHECK(plus.amp(0).real() == doctest::Approx(1 / std::sqrt(2.0)));

    const auto scaled = encoding::encode_amplitude({3.0, 4.0});
    CHECK(scaled.amp(0).real() == doctest::Approx(0.6));
    CHECK(scaled.amp(1).real() == doctest::Approx(0.8));

    CHECK_THROWS_AS(encoding::encode_amplitude({0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("feature map state") {
    SUBCASE("plain angle map reduces to the encoder") {
        const auto s = encoding::feature_map_state(
            {0.0, 0.0}, FeatureMapSpec::angle_map(2));
        CHECK(std::abs(s.amp(0) - quantum::cplx{1, 0}) < 1e-12);
    }
    SUBCASE("entangling ring flips the second qubit") {
        const auto s = encoding::feature_map_state(
            {M_PI / 2, 0.0}, FeatureMapSpec::angle_map(2, true));
        CHECK(std::abs(std::abs(s.amp(0b11)) - 1.0) < 1e-12);
    }
    SUBCASE("amplitude map reduces to the encoder") {
        const auto s = encoding::feature_map_state(
            {1.0, 1.0}, FeatureMapSpec::amplitude_map(1));
        CHECK(s.amp(0).real() == doctest::Approx(1 / std::sqrt(2.0)));
        CHECK(s.amp(1).real() == doctest::Approx(1 / std::sqrt(2.0)));
    }
    SUBCASE("inconsistent spec throws") {
        CHECK_THROWS_AS(encoding::feature_map_state(
                            {1.0, 2.0, 3.0}, FeatureMapSpec::amplitude_map(1)),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            encoding::feature_map_state({1.0}, FeatureMapSpec::angle_map(2)),
            std::invalid_argument);
    }
}

TEST_CASE("encoder outputs stay normalized on random input") {
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int trial = 0; trial < 30; ++trial) {
        encoding::FeatureVector x(3);
        for (auto& v : x) v = dist(eng);
        CHECK(std::abs(encoding::encode_angle(x).norm() - 1.0) < 1e-10);
        CHECK(std::abs(encoding::encode_amplitude(x).norm() - 1.0) < 1e-10);
        const auto mapped = encoding::feature_map_state(
            x, FeatureMapSpec::angle_map(3, true, 2));
        CHECK(std::abs(mapped.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("angle encoding is 2pi-periodic up to global sign") {
    std::mt19937_64 eng(6);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        encoding::FeatureVector x{dist(eng), dist(eng)};
        encoding::FeatureVector shifted{x[0] + 2 * M_PI, x[1]};
        const auto a = encoding::encode_angle(x);
        const auto b = encoding::encode_angle(shifted);
        const double overlap = std::abs(a.inner(b));
        CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("amplitude encoding is scale invariant") {
    const encoding::FeatureVector x{0.3, -1.2, 2.5};
    const auto a = encoding::encode_amplitude(x);
    encoding::FeatureVector scaled;
    for (double v : x) scaled.push_back(7.5 * v);
    const auto b = encoding::encode_amplitude(scaled);
    for (std::size_t i = 0; i < a.dim(); ++i)
        CHECK(std::abs(a.amp(i) - b.amp(i)) < 1e-12);
}

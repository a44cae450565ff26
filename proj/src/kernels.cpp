#include "aquakern/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "aquakern/linalg.hpp"
#include "aquakern/rng.hpp"

namespace aquakern::kernels {
namespace {

void check_lengths(const FeatureVector& x, const FeatureVector& z) {
    if (x.empty() || x.size() != z.size())
        throw std::invalid_argument("kernel_value: feature length mismatch");
}

double quantum_overlap_sq(const FeatureVector& x, const FeatureVector& z,
                          const encoding::FeatureMapSpec& map) {
    const auto sx = encoding::feature_map_state(x, map);
    const auto sz = encoding::feature_map_state(z, map);
    const double overlap = std::abs(sx.inner(sz));
    return overlap * overlap;
}

// Inversion test: prepare psi(x), undo the encoding of z, measure the
// all-zeros outcome `shots` times. The outcome count is binomial with
// success probability |<psi(z)|psi(x)>|^2.
double quantum_shot_estimate(const FeatureVector& x, const FeatureVector& z,
                             const KernelSpec& spec, std::uint64_t a,
                             std::uint64_t b) {
    const double p = quantum_overlap_sq(x, z, spec.feature_map);
    auto eng = rng::engine(spec.shot_seed, "quantum-kernel-shots", a, b);
    std::binomial_distribution<long> dist(*spec.shots,
                                          std::min(1.0, std::max(0.0, p)));
    return static_cast<double>(dist(eng)) / static_cast<double>(*spec.shots);
}

// Deterministic parallel map over [0, count): fixed chunking, each index
// writes its own slot.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned workers =
        count < 64 ? 1u : std::min<unsigned>(hw ? hw : 1u, 8u);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

double KernelMatrix::symmetry_residual() const {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            worst = std::max(worst, std::abs(at(i, j) - at(j, i)));
    return worst;
}

double KernelMatrix::min_eigenvalue() const {
    return linalg::min_symmetric_eigenvalue(entries, n);
}

double kernel_value(const FeatureVector& x, const FeatureVector& z,
                    const KernelSpec& spec, std::uint64_t pair_a,
                    std::uint64_t pair_b) {
    check_lengths(x, z);
    switch (spec.kind) {
        case KernelKind::linear: {
            double dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * z[i];
            return dot;
        }
        case KernelKind::polynomial: {
            if (spec.degree < 1)
                throw std::invalid_argument("kernel_value: degree must be >= 1");
            double dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * z[i];
            return std::pow(spec.beta * dot + spec.r, spec.degree);
        }
        case KernelKind::rbf: {
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - z[i];
                d2 += d * d;
            }
            return std::exp(-spec.beta * d2);
        }
        case KernelKind::quantum: {
            if (spec.shots) {
                if (*spec.shots <= 0)
                    throw std::invalid_argument(
                        "kernel_value: shots must be positive");
                return quantum_shot_estimate(x, z, spec, pair_a, pair_b);
            }
            return quantum_overlap_sq(x, z, spec.feature_map);
        }
    }
    throw std::invalid_argument("kernel_value: unknown kernel kind");
}

KernelMatrix gram_matrix(const std::vector<FeatureVector>& xs,
                         const KernelSpec& spec) {
    if (xs.empty()) throw std::invalid_argument("gram_matrix: empty dataset");
    const std::size_t len = xs[0].size();
    for (const auto& x : xs)
        if (x.size() != len)
            throw std::invalid_argument("gram_matrix: ragged feature lengths");

    const int n = static_cast<int>(xs.size());
    KernelMatrix out;
    out.n = n;
    out.spec = spec;
    out.entries.assign(static_cast<std::size_t>(n) * n, 0.0);

    // Upper triangle (i <= j) flattened to one index range.
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) pairs.emplace_back(i, j);

    parallel_for(pairs.size(), [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const double v = kernel_value(xs[i], xs[j], spec,
                                      static_cast<std::uint64_t>(i),
                                      static_cast<std::uint64_t>(j));
        out.entries[static_cast<std::size_t>(i) * n + j] = v;
        out.entries[static_cast<std::size_t>(j) * n + i] = v;
    });
    return out;
}

RectMatrix cross_gram(const std::vector<FeatureVector>& train,
                      const std::vector<FeatureVector>& test,
                      const KernelSpec& spec) {
    if (train.empty() || test.empty())
        throw std::invalid_argument("cross_gram: empty input");
    const std::size_t len = train[0].size();
    for (const auto& x : train)
        if (x.size() != len)
            throw std::invalid_argument("cross_gram: ragged feature lengths");
    for (const auto& x : test)
        if (x.size() != len)
            throw std::invalid_argument("cross_gram: ragged feature lengths");

    RectMatrix out;
    out.rows = static_cast<int>(train.size());
    out.cols = static_cast<int>(test.size());
    out.entries.assign(static_cast<std::size_t>(out.rows) * out.cols, 0.0);
    parallel_for(out.entries.size(), [&](std::size_t k) {
        const int i = static_cast<int>(k) / out.cols;
        const int j = static_cast<int>(k) % out.cols;
        // Distinct tag halves keep cross-gram shot streams disjoint from the
        // training Gram streams.
        out.entries[k] =
            kernel_value(train[i], test[j], spec,
                         0x80000000ULL + static_cast<std::uint64_t>(i),
                         static_cast<std::uint64_t>(j));
    });
    return out;
}

double default_rbf_beta(const std::vector<FeatureVector>& xs) {
    if (xs.empty() || xs[0].empty())
        throw std::invalid_argument("default_rbf_beta: empty dataset");
    double sum = 0.0, sumsq = 0.0;
    std::size_t count = 0;
    for (const auto& x : xs)
        for (double v : x) {
            sum += v;
            sumsq += v * v;
            ++count;
        }
    const double mean = sum / static_cast<double>(count);
    const double var = sumsq / static_cast<double>(count) - mean * mean;
    const double d = static_cast<double>(xs[0].size());
    if (var <= 0.0) return 1.0;
    return 1.0 / (d * var);
}

}  // namespace aquakern::kernels

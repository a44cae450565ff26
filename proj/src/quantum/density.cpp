#include "aquakern/quantum/density.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "aquakern/linalg.hpp"

namespace aquakern::quantum {
namespace {

using Mat2 = std::array<cplx, 4>;

// rho -> (E on target) rho, E a 2x2 acting on the row index.
void left_apply(std::vector<cplx>& e, std::size_t dim, int target,
                const Mat2& m) {
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t r0 = base + off;
            const std::size_t r1 = r0 + stride;
            for (std::size_t c = 0; c < dim; ++c) {
                const cplx a = e[r0 * dim + c];
                const cplx b = e[r1 * dim + c];
                e[r0 * dim + c] = m[0] * a + m[1] * b;
                e[r1 * dim + c] = m[2] * a + m[3] * b;
            }
        }
    }
}

// rho -> rho (E on target)^dagger, acting on the column index.
void right_apply_dagger(std::vector<cplx>& e, std::size_t dim, int target,
                        const Mat2& m) {
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t r = 0; r < dim; ++r) {
        cplx* row = e.data() + r * dim;
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t c0 = base + off;
                const std::size_t c1 = c0 + stride;
                const cplx a = row[c0];
                const cplx b = row[c1];
                row[c0] = a * std::conj(m[0]) + b * std::conj(m[1]);
                row[c1] = a * std::conj(m[2]) + b * std::conj(m[3]);
            }
        }
    }
}

std::vector<cplx> kraus_term(const std::vector<cplx>& entries, std::size_t dim,
                             int target, const Mat2& m) {
    std::vector<cplx> out = entries;
    left_apply(out, dim, target, m);
    right_apply_dagger(out, dim, target, m);
    return out;
}

void check_target(const DensityMatrix& rho, int target) {
    if (target < 0 || target >= rho.num_qubits())
        throw std::out_of_range("noise channel: target qubit out of range");
}

constexpr Mat2 kPauliX = {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
constexpr Mat2 kPauliY = {cplx{0, 0}, cplx{0, -1}, cplx{0, 1}, cplx{0, 0}};
constexpr Mat2 kPauliZ = {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};

}  // namespace

DensityMatrix::DensityMatrix(int num_qubits)
    : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits) {
    if (num_qubits <= 0)
        throw std::invalid_argument("DensityMatrix: num_qubits must be positive");
    entries_.assign(dim_ * dim_, cplx{0.0, 0.0});
    entries_[0] = cplx{1.0, 0.0};
}

DensityMatrix::DensityMatrix(int num_qubits, std::vector<cplx> entries)
    : num_qubits_(num_qubits),
      dim_(std::size_t{1} << num_qubits),
      entries_(std::move(entries)) {
    if (num_qubits <= 0)
        throw std::invalid_argument("DensityMatrix: num_qubits must be positive");
    if (entries_.size() != dim_ * dim_)
        throw std::invalid_argument("DensityMatrix: entry count != 4^n");
}

double DensityMatrix::trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i].real();
    return t;
}

double DensityMatrix::hermiticity_residual() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            worst = std::max(worst,
                             std::abs(entries_[r * dim_ + c] -
                                      std::conj(entries_[c * dim_ + r])));
    return worst;
}

double DensityMatrix::min_eigenvalue() const {
    // Real embedding [[Re, -Im], [Im, Re]] has the same spectrum, doubled.
    const int n = static_cast<int>(dim_);
    std::vector<double> m(4 * dim_ * dim_, 0.0);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            const cplx h = 0.5 * (entries_[r * dim_ + c] +
                                  std::conj(entries_[c * dim_ + r]));
            m[r * 2 * dim_ + c] = h.real();
            m[r * 2 * dim_ + (c + dim_)] = -h.imag();
            m[(r + dim_) * 2 * dim_ + c] = h.imag();
            m[(r + dim_) * 2 * dim_ + (c + dim_)] = h.real();
        }
    }
    return linalg::min_symmetric_eigenvalue(m, 2 * n);
}

DensityMatrix state_to_density(const QuantumState& state) {
    const auto& a = state.amplitudes();
    const std::size_t dim = a.size();
    std::vector<cplx> e(dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            e[r * dim + c] = a[r] * std::conj(a[c]);
    return DensityMatrix(state.num_qubits(), std::move(e));
}

DensityMatrix apply_gate_density(const DensityMatrix& rho, const Gate& g) {
    std::vector<cplx> e = rho.entries();
    const std::size_t dim = rho.dim();
    if (g.kind == GateKind::CNOT) {
        if (!g.control)
            throw std::invalid_argument("apply_gate_density: CNOT needs control");
        check_target(rho, g.target);
        check_target(rho, *g.control);
        const std::size_t cbit = std::size_t{1} << *g.control;
        const std::size_t tbit = std::size_t{1} << g.target;
        auto perm = [&](std::size_t i) {
            return (i & cbit) ? (i ^ tbit) : i;
        };
        std::vector<cplx> out(e.size());
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                out[perm(r) * dim + perm(c)] = e[r * dim + c];
        return DensityMatrix(rho.num_qubits(), std::move(out));
    }
    check_target(rho, g.target);
    const auto m = single_qubit_matrix(g);
    left_apply(e, dim, g.target, m);
    right_apply_dagger(e, dim, g.target, m);
    return DensityMatrix(rho.num_qubits(), std::move(e));
}

DensityMatrix apply_depolarizing(const DensityMatrix& rho, double p,
                                 int target) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("apply_depolarizing: p must be in [0,1]");
    check_target(rho, target);
    const std::size_t dim = rho.dim();
    // (1-p) rho + p * (I/2 on target) == (1 - 3p/4) rho + (p/4) sum_P P rho P
    std::vector<cplx> out = rho.entries();
    const double keep = 1.0 - 0.75 * p;
    for (auto& v : out) v *= keep;
    for (const Mat2* pauli : {&kPauliX, &kPauliY, &kPauliZ}) {
        const auto term = kraus_term(rho.entries(), dim, target, *pauli);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += 0.25 * p * term[i];
    }
    return DensityMatrix(rho.num_qubits(), std::move(out));
}

std::array<Mat2, 2> amplitude_damping_kraus(double gamma) {
    const double root = std::sqrt(1.0 - gamma);
    const Mat2 e0 = {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{root, 0}};
    const Mat2 e1 = {cplx{0, 0}, cplx{std::sqrt(gamma), 0}, cplx{0, 0},
                     cplx{0, 0}};
    return {e0, e1};
}

DensityMatrix apply_amplitude_damping(const DensityMatrix& rho, double gamma,
                                      int target) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument(
            "apply_amplitude_damping: gamma must be in [0,1]");
    check_target(rho, target);
    const std::size_t dim = rho.dim();
    const auto kraus = amplitude_damping_kraus(gamma);
    std::vector<cplx> out = kraus_term(rho.entries(), dim, target, kraus[0]);
    const auto t1 = kraus_term(rho.entries(), dim, target, kraus[1]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t1[i];
    return DensityMatrix(rho.num_qubits(), std::move(out));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& ch) {
    switch (ch.kind) {
        case NoiseChannel::Kind::depolarizing:
            return apply_depolarizing(rho, ch.probability, ch.target);
        case NoiseChannel::Kind::amplitude_damping:
            return apply_amplitude_damping(rho, ch.probability, ch.target);
    }
    throw std::invalid_argument("apply_channel: unknown channel kind");
}

double expectation_density(const DensityMatrix& rho,
                           const PauliObservable& obs) {
    if (obs.num_qubits() != rho.num_qubits())
        throw std::invalid_argument("expectation_density: qubit mismatch");
    const std::size_t dim = rho.dim();
    // O maps |i> -> phase(i) |perm(i)>, so Tr(rho O) = sum_i rho[i][perm(i)] phase(i).
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t j = i;
        cplx phase{1.0, 0.0};
        for (int q = 0; q < obs.num_qubits(); ++q) {
            const std::size_t bit = (i >> q) & 1u;
            switch (obs.factors()[q]) {
                case Pauli::I: break;
                case Pauli::X: j ^= (std::size_t{1} << q); break;
                case Pauli::Y:
                    j ^= (std::size_t{1} << q);
                    phase *= bit ? cplx{0, -1} : cplx{0, 1};
                    break;
                case Pauli::Z:
                    if (bit) phase = -phase;
                    break;
            }
        }
        acc += rho.at(i, j) * phase;
    }
    return acc.real();
}

}  // namespace aquakern::quantum

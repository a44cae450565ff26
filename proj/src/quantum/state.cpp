#include "aquakern/quantum/state.hpp"

#include <cmath>
#include <stdexcept>

#include "aquakern/simd/kernels.hpp"

namespace aquakern::quantum {

QuantumState::QuantumState(int num_qubits)
    : num_qubits_(num_qubits) {
    if (num_qubits <= 0)
        throw std::invalid_argument("QuantumState: num_qubits must be positive");
    amplitudes_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    amplitudes_[0] = cplx{1.0, 0.0};
}

QuantumState::QuantumState(int num_qubits, std::vector<cplx> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits <= 0)
        throw std::invalid_argument("QuantumState: num_qubits must be positive");
    if (amplitudes_.size() != (std::size_t{1} << num_qubits))
        throw std::invalid_argument("QuantumState: amplitude length != 2^n");
    if (std::abs(norm() - 1.0) > 1e-10)
        throw std::invalid_argument("QuantumState: amplitudes not normalized");
}

QuantumState QuantumState::basis(int num_qubits, std::size_t index) {
    QuantumState s(num_qubits);
    if (index >= s.dim())
        throw std::out_of_range("QuantumState::basis: index out of range");
    s.amplitudes_[0] = cplx{0.0, 0.0};
    s.amplitudes_[index] = cplx{1.0, 0.0};
    return s;
}

double QuantumState::norm() const {
    return std::sqrt(simd::active_kernels().squared_norm(amplitudes_.data(),
                                                         amplitudes_.size()));
}

cplx QuantumState::inner(const QuantumState& other) const {
    if (other.num_qubits_ != num_qubits_)
        throw std::invalid_argument("inner: qubit count mismatch");
    return simd::active_kernels().inner_product(
        amplitudes_.data(), other.amplitudes_.data(), amplitudes_.size());
}

}  // namespace aquakern::quantum

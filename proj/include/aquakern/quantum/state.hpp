#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace aquakern::quantum {

using cplx = std::complex<double>;

// Pure state of n qubits as a dense amplitude vector of length 2^n.
// Qubit ordering is little-endian throughout the library: qubit 0 is the
// least significant bit of the basis-state index.
class QuantumState {
public:
    // Ground state |0...0>.
    explicit QuantumState(int num_qubits);

    // Takes ownership of an amplitude vector; must have length 2^n and be
    // normalized within 1e-10.
    QuantumState(int num_qubits, std::vector<cplx> amplitudes);

    static QuantumState basis(int num_qubits, std::size_t index);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<cplx>& amplitudes() const { return amplitudes_; }
    cplx amp(std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

    // <this|other>
    cplx inner(const QuantumState& other) const;

    std::vector<cplx>& mutable_amplitudes() { return amplitudes_; }

private:
    int num_qubits_;
    std::vector<cplx> amplitudes_;
};

}  // namespace aquakern::quantum

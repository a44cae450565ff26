#pragma once

#include <array>

#include "aquakern/quantum/gates.hpp"
#include "aquakern/quantum/observable.hpp"
#include "aquakern/quantum/state.hpp"

namespace aquakern::quantum {

// Mixed state of n qubits as a dense 2^n x 2^n matrix, row-major.
class DensityMatrix {
public:
    explicit DensityMatrix(int num_qubits);  // |0..0><0..0|
    DensityMatrix(int num_qubits, std::vector<cplx> entries);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return dim_; }
    cplx at(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    const std::vector<cplx>& entries() const { return entries_; }

    double trace_real() const;
    double hermiticity_residual() const;  // max |rho - rho^dagger|
    double min_eigenvalue() const;        // via Jacobi on the Hermitian part

private:
    int num_qubits_;
    std::size_t dim_;
    std::vector<cplx> entries_;
};

// Noise channel description matching the config surface.
struct NoiseChannel {
    enum class Kind { depolarizing, amplitude_damping };
    Kind kind;
    double probability;  // p for depolarizing, gamma for amplitude damping
    int target;
};

DensityMatrix state_to_density(const QuantumState& state);

// rho -> U rho U^dagger for a gate acting on the given qubits.
DensityMatrix apply_gate_density(const DensityMatrix& rho, const Gate& g);

// rho -> (1-p) rho + p * (I/2 on target, other qubits untouched).
// Throws std::invalid_argument for p outside [0,1].
DensityMatrix apply_depolarizing(const DensityMatrix& rho, double p, int target);

// rho -> E0 rho E0^dagger + E1 rho E1^dagger with the relaxation Kraus pair.
// Throws std::invalid_argument for gamma outside [0,1].
DensityMatrix apply_amplitude_damping(const DensityMatrix& rho, double gamma,
                                      int target);

DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& ch);

// The amplitude-damping Kraus pair {E0, E1}, each row-major 2x2.
std::array<std::array<cplx, 4>, 2> amplitude_damping_kraus(double gamma);

// Tr(rho O). Throws std::invalid_argument on qubit-count mismatch.
double expectation_density(const DensityMatrix& rho, const PauliObservable& obs);

}  // namespace aquakern::quantum

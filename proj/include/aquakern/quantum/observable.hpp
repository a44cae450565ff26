#pragma once

#include <string>
#include <vector>

#include "aquakern/quantum/state.hpp"

namespace aquakern::quantum {

enum class Pauli { I, X, Y, Z };

// Tensor product of single-qubit Pauli factors, one per qubit.
// factors[q] acts on qubit q (little-endian index).
class PauliObservable {
public:
    explicit PauliObservable(std::vector<Pauli> factors);

    // From a string like "ZIZ"; position q in the string is qubit q.
    static PauliObservable parse(const std::string& s);

    // Z on qubit `target`, identity elsewhere.
    static PauliObservable single_z(int num_qubits, int target);

    int num_qubits() const { return static_cast<int>(factors_.size()); }
    const std::vector<Pauli>& factors() const { return factors_; }
    std::string to_string() const;

    // O|psi> as a new amplitude vector.
    std::vector<cplx> apply(const QuantumState& state) const;

private:
    std::vector<Pauli> factors_;
};

// <psi|O|psi>. Throws std::invalid_argument on qubit-count mismatch.
double expectation(const QuantumState& state, const PauliObservable& obs);

}  // namespace aquakern::quantum

#include "aquakern/quantum/observable.hpp"

#include <stdexcept>

#include "aquakern/simd/kernels.hpp"

namespace aquakern::quantum {
namespace {

const cplx* pauli_matrix(Pauli p) {
    static const cplx x[4] = {{0, 0}, {1, 0}, {1, 0}, {0, 0}};
    static const cplx y[4] = {{0, 0}, {0, -1}, {0, 1}, {0, 0}};
    static const cplx z[4] = {{1, 0}, {0, 0}, {0, 0}, {-1, 0}};
    switch (p) {
        case Pauli::X: return x;
        case Pauli::Y: return y;
        case Pauli::Z: return z;
        case Pauli::I: break;
    }
    return nullptr;
}

}  // namespace

PauliObservable::PauliObservable(std::vector<Pauli> factors)
    : factors_(std::move(factors)) {
    if (factors_.empty())
        throw std::invalid_argument("PauliObservable: empty factor list");
}

PauliObservable PauliObservable::parse(const std::string& s) {
    std::vector<Pauli> factors;
    factors.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case 'I': factors.push_back(Pauli::I); break;
            case 'X': factors.push_back(Pauli::X); break;
            case 'Y': factors.push_back(Pauli::Y); break;
            case 'Z': factors.push_back(Pauli::Z); break;
            default:
                throw std::invalid_argument(
                    "PauliObservable: unknown factor '" + std::string(1, c) +
                    "'");
        }
    }
    return PauliObservable(std::move(factors));
}

PauliObservable PauliObservable::single_z(int num_qubits, int target) {
    if (target < 0 || target >= num_qubits)
        throw std::out_of_range("single_z: target out of range");
    std::vector<Pauli> factors(num_qubits, Pauli::I);
    factors[target] = Pauli::Z;
    return PauliObservable(std::move(factors));
}

std::string PauliObservable::to_string() const {
    std::string s;
    for (Pauli p : factors_) {
        switch (p) {
            case Pauli::I: s += 'I'; break;
            case Pauli::X: s += 'X'; break;
            case Pauli::Y: s += 'Y'; break;
            case Pauli::Z: s += 'Z'; break;
        }
    }
    return s;
}

std::vector<cplx> PauliObservable::apply(const QuantumState& state) const {
    if (num_qubits() != state.num_qubits())
        throw std::invalid_argument("PauliObservable: qubit count mismatch");
    std::vector<cplx> amps = state.amplitudes();
    for (int q = 0; q < num_qubits(); ++q) {
        const cplx* m = pauli_matrix(factors_[q]);
        if (m) simd::active_kernels().apply_2x2(amps.data(), amps.size(), q, m);
    }
    return amps;
}

double expectation(const QuantumState& state, const PauliObservable& obs) {
    const std::vector<cplx> applied = obs.apply(state);
    const cplx v = simd::active_kernels().inner_product(
        state.amplitudes().data(), applied.data(), applied.size());
    return v.real();
}

}  // namespace aquakern::quantum

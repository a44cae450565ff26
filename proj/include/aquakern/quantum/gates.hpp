#pragma once

#include <array>
#include <optional>

#include "aquakern/quantum/state.hpp"

namespace aquakern::quantum {

enum class GateKind { RX, RY, RZ, CNOT, H, X };

bool is_rotation(GateKind k);

// Single- or two-qubit gate description. Rotation kinds carry an angle in
// radians; CNOT carries a control index.
struct Gate {
    GateKind kind;
    int target = 0;
    double angle = 0.0;
    std::optional<int> control;

    static Gate rx(int target, double angle) {
        return {GateKind::RX, target, angle, std::nullopt};
    }
    static Gate ry(int target, double angle) {
        return {GateKind::RY, target, angle, std::nullopt};
    }
    static Gate rz(int target, double angle) {
        return {GateKind::RZ, target, angle, std::nullopt};
    }
    static Gate cnot(int control, int target) {
        return {GateKind::CNOT, target, 0.0, control};
    }
    static Gate h(int target) { return {GateKind::H, target, 0.0, std::nullopt}; }
    static Gate x(int target) { return {GateKind::X, target, 0.0, std::nullopt}; }

    // Gate with all rotation angles negated; reversing a gate sequence and
    // inverting each element gives the inverse circuit.
    Gate inverse() const;
};

// 2x2 unitary of a single-qubit gate, row-major {m00, m01, m10, m11}.
// R_nu(theta) = exp(-i * theta * nu / 2).
std::array<cplx, 4> single_qubit_matrix(const Gate& g);

// Returns the unitarily evolved state. Throws std::out_of_range for bad
// qubit indices, std::invalid_argument for malformed gates.
QuantumState apply_gate(const QuantumState& state, const Gate& g);

// In-place variant used by hot loops.
void apply_gate_inplace(QuantumState& state, const Gate& g);

}  // namespace aquakern::quantum

#include "aquakern/quantum/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "aquakern/simd/kernels.hpp"

namespace aquakern::quantum {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_indices(const QuantumState& state, const Gate& g) {
    const int n = state.num_qubits();
    if (g.target < 0 || g.target >= n)
        throw std::out_of_range("apply_gate: target qubit out of range");
    if (g.kind == GateKind::CNOT) {
        if (!g.control)
            throw std::invalid_argument("apply_gate: CNOT requires a control");
        if (*g.control < 0 || *g.control >= n)
            throw std::out_of_range("apply_gate: control qubit out of range");
        if (*g.control == g.target)
            throw std::invalid_argument("apply_gate: control equals target");
    } else if (g.control) {
        throw std::invalid_argument("apply_gate: unexpected control qubit");
    }
}

void apply_cnot(std::vector<cplx>& amps, int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
    }
}

}  // namespace

bool is_rotation(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

Gate Gate::inverse() const {
    Gate g = *this;
    if (is_rotation(g.kind)) g.angle = -g.angle;
    return g;  // CNOT, H, X are self-inverse
}

std::array<cplx, 4> single_qubit_matrix(const Gate& g) {
    const double c = std::cos(g.angle / 2.0);
    const double s = std::sin(g.angle / 2.0);
    switch (g.kind) {
        case GateKind::RX:
            return {cplx{c, 0}, cplx{0, -s}, cplx{0, -s}, cplx{c, 0}};
        case GateKind::RY:
            return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
        case GateKind::RZ:
            return {cplx{c, -s}, cplx{0, 0}, cplx{0, 0}, cplx{c, s}};
        case GateKind::H:
            return {cplx{kInvSqrt2, 0}, cplx{kInvSqrt2, 0}, cplx{kInvSqrt2, 0},
                    cplx{-kInvSqrt2, 0}};
        case GateKind::X:
            return {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
        case GateKind::CNOT:
            break;
    }
    throw std::invalid_argument("single_qubit_matrix: not a 1-qubit gate");
}

void apply_gate_inplace(QuantumState& state, const Gate& g) {
    check_indices(state, g);
    auto& amps = state.mutable_amplitudes();
    if (g.kind == GateKind::CNOT) {
        apply_cnot(amps, *g.control, g.target);
        return;
    }
    const auto m = single_qubit_matrix(g);
    simd::active_kernels().apply_2x2(amps.data(), amps.size(), g.target,
                                     m.data());
}

QuantumState apply_gate(const QuantumState& state, const Gate& g) {
    QuantumState out = state;
    apply_gate_inplace(out, g);
    return out;
}

}  // namespace aquakern::quantum

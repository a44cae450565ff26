#include "aquakern/encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace aquakern::encoding {

using quantum::Gate;
using quantum::QuantumState;

namespace {

void check_finite(const FeatureVector& x) {
    if (x.empty())
        throw std::invalid_argument("encoding: empty feature vector");
    for (double v : x)
        if (!std::isfinite(v))
            throw std::invalid_argument("encoding: non-finite feature value");
}

// Qubit i controls i+1 mod n. At n == 2 the closing edge would repeat the
// only pair, so the ring degenerates to a single CNOT.
void append_cnot_ring(std::vector<Gate>& gates, int n) {
    if (n < 2) return;
    const int edges = n == 2 ? 1 : n;
    for (int q = 0; q < edges; ++q) gates.push_back(Gate::cnot(q, (q + 1) % n));
}

}  // namespace

int required_qubits(EncodingScheme scheme, std::size_t num_features) {
    if (num_features == 0)
        throw std::invalid_argument("required_qubits: zero features");
    if (scheme == EncodingScheme::angle)
        return static_cast<int>(num_features);
    int n = 1;
    while ((std::size_t{1} << n) < num_features) ++n;
    return n;
}

QuantumState encode_angle(const FeatureVector& x) {
    check_finite(x);
    const int n = static_cast<int>(x.size());
    QuantumState state(n);
    for (int q = 0; q < n; ++q)
        quantum::apply_gate_inplace(state, Gate::ry(q, 2.0 * x[q]));
    return state;
}

QuantumState encode_amplitude(const FeatureVector& x) {
    check_finite(x);
    const int n = required_qubits(EncodingScheme::amplitude, x.size());
    const std::size_t dim = std::size_t{1} << n;
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    if (norm2 == 0.0)
        throw std::invalid_argument("encode_amplitude: all-zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    std::vector<quantum::cplx> amps(dim, quantum::cplx{0.0, 0.0});
    for (std::size_t i = 0; i < x.size(); ++i)
        amps[i] = quantum::cplx{x[i] * inv, 0.0};
    return QuantumState(n, std::move(amps));
}

std::vector<Gate> angle_map_circuit(const FeatureVector& x,
                                    const FeatureMapSpec& spec) {
    check_finite(x);
    if (spec.scheme != EncodingScheme::angle)
        throw std::invalid_argument("angle_map_circuit: angle scheme only");
    if (spec.num_qubits != static_cast<int>(x.size()))
        throw std::invalid_argument(
            "angle_map_circuit: one qubit per feature required");
    if (spec.repetitions < 1)
        throw std::invalid_argument("angle_map_circuit: repetitions < 1");
    std::vector<Gate> gates;
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        for (int q = 0; q < spec.num_qubits; ++q)
            gates.push_back(Gate::ry(q, 2.0 * x[q]));
        if (spec.entangling) append_cnot_ring(gates, spec.num_qubits);
    }
    return gates;
}

QuantumState feature_map_state(const FeatureVector& x,
                               const FeatureMapSpec& spec) {
    check_finite(x);
    if (spec.repetitions < 1)
        throw std::invalid_argument("feature_map_state: repetitions < 1");
    if (spec.scheme == EncodingScheme::angle) {
        QuantumState state(spec.num_qubits);
        for (const Gate& g : angle_map_circuit(x, spec))
            quantum::apply_gate_inplace(state, g);
        return state;
    }
    if ((std::size_t{1} << spec.num_qubits) < x.size())
        throw std::invalid_argument(
            "feature_map_state: 2^num_qubits < feature length");
    QuantumState state = encode_amplitude(x);
    if (state.num_qubits() != spec.num_qubits) {
        // Pad to the requested register size.
        std::vector<quantum::cplx> amps(std::size_t{1} << spec.num_qubits,
                                        quantum::cplx{0.0, 0.0});
        for (std::size_t i = 0; i < state.dim(); ++i) amps[i] = state.amp(i);
        state = QuantumState(spec.num_qubits, std::move(amps));
    }
    // Amplitude preparation is not gate-based, so each repetition beyond the
    // first contributes only the entangling ring.
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        if (spec.entangling && spec.num_qubits >= 2) {
            std::vector<Gate> ring;
            append_cnot_ring(ring, spec.num_qubits);
            for (const Gate& g : ring) quantum::apply_gate_inplace(state, g);
        }
    }
    return state;
}

}  // namespace aquakern::encoding

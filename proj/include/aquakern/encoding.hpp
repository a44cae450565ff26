#pragma once

#include <vector>

#include "aquakern/quantum/gates.hpp"
#include "aquakern/quantum/state.hpp"

namespace aquakern::encoding {

using FeatureVector = std::vector<double>;

enum class EncodingScheme { angle, amplitude };

// Feature-map description: which encoder, how many qubits, whether a CNOT
// ring entangles the register, and how many encode+entangle repetitions.
struct FeatureMapSpec {
    EncodingScheme scheme = EncodingScheme::angle;
    int num_qubits = 1;
    bool entangling = false;
    int repetitions = 1;

    static FeatureMapSpec angle_map(int num_qubits, bool entangling = false,
                                    int repetitions = 1) {
        return {EncodingScheme::angle, num_qubits, entangling, repetitions};
    }
    static FeatureMapSpec amplitude_map(int num_qubits, bool entangling = false,
                                        int repetitions = 1) {
        return {EncodingScheme::amplitude, num_qubits, entangling, repetitions};
    }
};

// Qubit i carries cos(x_i)|0> + sin(x_i)|1>; one qubit per feature.
// Throws std::invalid_argument for empty or non-finite input.
quantum::QuantumState encode_angle(const FeatureVector& x);

// L2-normalized features as amplitudes, zero-padded to the next power of two.
// Throws std::invalid_argument for an all-zero vector.
quantum::QuantumState encode_amplitude(const FeatureVector& x);

// Encoder output followed by a CNOT ring when entangling, repeated
// `repetitions` times with re-encoding applied as gates.
quantum::QuantumState feature_map_state(const FeatureVector& x,
                                        const FeatureMapSpec& spec);

// The feature map as an explicit gate list on spec.num_qubits qubits
// starting from |0..0>. Only defined for the angle scheme (amplitude
// encoding is prepared directly from the normalized vector).
std::vector<quantum::Gate> angle_map_circuit(const FeatureVector& x,
                                             const FeatureMapSpec& spec);

// Number of qubits the map needs for a given feature count.
int required_qubits(EncodingScheme scheme, std::size_t num_features);

}  // namespace aquakern::encoding

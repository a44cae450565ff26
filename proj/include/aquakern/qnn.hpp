#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aquakern/encoding.hpp"
#include "aquakern/quantum/density.hpp"
#include "aquakern/quantum/gates.hpp"
#include "aquakern/quantum/observable.hpp"

namespace aquakern::qnn {

using encoding::FeatureVector;
using ParameterVector = std::vector<double>;

// Layered hardware-efficient ansatz: `rotation_pattern` rotations per qubit
// per layer, optionally followed by a CNOT ring. layers == 0 means the bare
// encoder.
struct AnsatzSpec {
    int num_qubits = 1;
    int layers = 1;
    std::vector<quantum::GateKind> rotation_pattern = {quantum::GateKind::RY,
                                                       quantum::GateKind::RZ};
    bool entangler = true;

    int parameter_count() const {
        return layers * num_qubits * static_cast<int>(rotation_pattern.size());
    }
};

enum class OptimizerKind { adam, gd, rmsprop, simplex };
enum class InitKind { xavier, uniform_small };

struct ClassicalHeadSpec {
    int hidden_units = 4;  // dense + ReLU on the per-qubit <Z> vector
};

struct QnnConfig {
    AnsatzSpec ansatz;
    // Pauli string, position q = qubit q; empty means Z on qubit 0.
    std::string observable;
    encoding::FeatureMapSpec encoding;
    OptimizerKind optimizer = OptimizerKind::adam;
    double learning_rate = 0.01;
    int epochs = 50;
    InitKind init = InitKind::xavier;
    std::vector<quantum::NoiseChannel> noise;
    std::optional<ClassicalHeadSpec> classical_head;
    std::uint64_t seed = 0;

    int circuit_parameter_count() const { return ansatz.parameter_count(); }
    int head_parameter_count() const;
    int total_parameter_count() const {
        return circuit_parameter_count() + head_parameter_count();
    }
};

struct EpochRecord {
    double loss = 0.0;
    double accuracy = 0.0;
    bool dead = false;
};

struct Diagnostics {
    bool dead_neuron = false;  // some epoch had zero output variance
    bool plateau = false;      // loss deltas < 1e-9 over a 10-epoch window
};

struct QnnModel {
    QnnConfig config;
    ParameterVector parameters;
    std::vector<EpochRecord> history;
    Diagnostics diagnostics;
};

struct ForwardResult {
    double raw_expectation = 0.0;         // <O>, in [-1, 1]
    std::vector<double> per_qubit_z;      // <Z_q> per qubit (head input)
    double output = 0.0;                  // mapped to [0, 1]
};

// Uniform U(-x, x) with x = sqrt(6 / (fan_in + fan_out)).
std::vector<double> xavier_init(int fan_in, int fan_out, int count,
                                std::uint64_t seed);

// Seeded initial parameter vector per config.init.
ParameterVector init_parameters(const QnnConfig& config);

// The configured observable padded with identities to the register size.
quantum::PauliObservable resolve_observable(const QnnConfig& config);

// Encodes x, applies the ansatz (density path when noise is configured,
// channels after every layer), measures, and maps the result to [0, 1]:
// (<O>+1)/2 without a head, sigmoid of the dense+ReLU head otherwise.
ForwardResult qnn_forward_detail(const FeatureVector& x,
                                 const ParameterVector& params,
                                 const QnnConfig& config);

double qnn_forward(const FeatureVector& x, const ParameterVector& params,
                   const QnnConfig& config);

// (1/n) sum (outputs_i - targets_i)^2 against {0,1} targets.
double mse_loss(const std::vector<double>& outputs,
                const std::vector<int>& targets);

// d<O>/d theta_index of the raw expectation via the +-pi/2 shift rule.
double parameter_shift_gradient(const FeatureVector& x,
                                const ParameterVector& params,
                                const QnnConfig& config, int index);

struct OptimizerState {
    std::vector<double> m;  // first moment (adam)
    std::vector<double> v;  // second moment (adam / rmsprop accumulator)
    long step = 0;
};

// gd: theta - lr*g. rmsprop: decay 0.9, eps 1e-8. adam: beta1 0.9,
// beta2 0.999, eps 1e-8, bias-corrected. The simplex kind is loss-driven
// and handled by NelderMead, not here.
ParameterVector optimizer_step(const ParameterVector& params,
                               const std::vector<double>& grads,
                               OptimizerState& state, OptimizerKind kind,
                               double learning_rate);

// Derivative-free simplex (reflect / expand / contract / shrink) filling
// the COBYLA slot of the optimizer sweep.
class NelderMead {
public:
    using LossFn = std::function<double(const ParameterVector&)>;

    NelderMead(const ParameterVector& start, double initial_step,
               const LossFn& loss);

    // One reflect/expand/contract/shrink pass; returns best loss so far.
    double iterate(const LossFn& loss);

    const ParameterVector& best() const;
    double best_loss() const;

private:
    std::vector<ParameterVector> simplex_;
    std::vector<double> values_;
    void order();
};

enum class NeuronVerdict { healthy, dead };

// dead when the population variance of the batch outputs is below 1e-12.
NeuronVerdict dead_neuron_check(const std::vector<double>& outputs);

// true when every consecutive loss delta in the trailing `window` epochs is
// below 1e-9.
bool loss_plateau(const std::vector<double>& loss_history, int window = 10);

// Full-batch training; deterministic given config.seed.
QnnModel train_qnn(const std::vector<FeatureVector>& xs,
                   const std::vector<int>& targets, const QnnConfig& config);

std::vector<double> qnn_outputs(const QnnModel& model,
                                const std::vector<FeatureVector>& xs);

}  // namespace aquakern::qnn

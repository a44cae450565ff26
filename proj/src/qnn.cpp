#include "aquakern/qnn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "aquakern/rng.hpp"

namespace aquakern::qnn {

using quantum::DensityMatrix;
using quantum::Gate;
using quantum::GateKind;
using quantum::PauliObservable;
using quantum::QuantumState;

namespace {

void validate_config(const QnnConfig& config) {
    if (config.ansatz.num_qubits <= 0)
        throw std::invalid_argument("qnn: num_qubits must be positive");
    if (config.ansatz.layers < 0)
        throw std::invalid_argument("qnn: layers must be >= 0");
    if (config.ansatz.rotation_pattern.empty())
        throw std::invalid_argument("qnn: empty rotation pattern");
    for (GateKind k : config.ansatz.rotation_pattern)
        if (!quantum::is_rotation(k))
            throw std::invalid_argument(
                "qnn: rotation pattern must contain rotation gates only");
    if (config.encoding.num_qubits != config.ansatz.num_qubits)
        throw std::invalid_argument(
            "qnn: encoding and ansatz qubit counts differ");
    if (config.learning_rate <= 0.0)
        throw std::invalid_argument("qnn: learning rate must be positive");
}

void validate_params(const ParameterVector& params, const QnnConfig& config) {
    if (static_cast<int>(params.size()) != config.total_parameter_count())
        throw std::invalid_argument("qnn: parameter vector length mismatch");
}

std::vector<Gate> ansatz_gates(const ParameterVector& params,
                               const AnsatzSpec& spec, int layer) {
    std::vector<Gate> gates;
    const int per_layer =
        spec.num_qubits * static_cast<int>(spec.rotation_pattern.size());
    int idx = layer * per_layer;
    for (int q = 0; q < spec.num_qubits; ++q) {
        for (GateKind k : spec.rotation_pattern)
            gates.push_back(Gate{k, q, params[idx++], std::nullopt});
    }
    if (spec.entangler && spec.num_qubits >= 2) {
        for (int q = 0; q < spec.num_qubits; ++q)
            gates.push_back(Gate::cnot(q, (q + 1) % spec.num_qubits));
    }
    return gates;
}

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

// Head parameter slices inside the full vector.
struct HeadView {
    const double* w1;  // hidden x nq, row-major
    const double* b1;  // hidden
    const double* w2;  // hidden
    const double* b2;  // 1
    int hidden;
    int nq;
};

HeadView head_view(const ParameterVector& params, const QnnConfig& config) {
    const int c = config.circuit_parameter_count();
    const int hidden = config.classical_head->hidden_units;
    const int nq = config.ansatz.num_qubits;
    const double* base = params.data() + c;
    return {base, base + hidden * nq, base + hidden * nq + hidden,
            base + hidden * nq + 2 * hidden, hidden, nq};
}

double head_output(const HeadView& h, const std::vector<double>& z) {
    double out = h.b2[0];
    for (int u = 0; u < h.hidden; ++u) {
        double a = h.b1[u];
        for (int q = 0; q < h.nq; ++q) a += h.w1[u * h.nq + q] * z[q];
        out += h.w2[u] * std::max(0.0, a);
    }
    return sigmoid(out);
}

// Pure-state evolution through encoder and ansatz.
QuantumState evolve_pure(const FeatureVector& x, const ParameterVector& params,
                         const QnnConfig& config) {
    QuantumState state = encoding::feature_map_state(x, config.encoding);
    for (int l = 0; l < config.ansatz.layers; ++l)
        for (const Gate& g : ansatz_gates(params, config.ansatz, l))
            quantum::apply_gate_inplace(state, g);
    return state;
}

// Density-matrix evolution with the configured channels applied after each
// ansatz layer (after the encoder when there are no layers).
DensityMatrix evolve_noisy(const FeatureVector& x,
                           const ParameterVector& params,
                           const QnnConfig& config) {
    DensityMatrix rho =
        quantum::state_to_density(encoding::feature_map_state(x, config.encoding));
    if (config.ansatz.layers == 0) {
        for (const auto& ch : config.noise) rho = quantum::apply_channel(rho, ch);
        return rho;
    }
    for (int l = 0; l < config.ansatz.layers; ++l) {
        for (const Gate& g : ansatz_gates(params, config.ansatz, l))
            rho = quantum::apply_gate_density(rho, g);
        for (const auto& ch : config.noise) rho = quantum::apply_channel(rho, ch);
    }
    return rho;
}

struct Measured {
    double raw;
    std::vector<double> per_qubit_z;
};

Measured measure(const FeatureVector& x, const ParameterVector& params,
                 const QnnConfig& config, bool want_per_qubit) {
    const PauliObservable obs = resolve_observable(config);
    const int nq = config.ansatz.num_qubits;
    Measured m;
    if (config.noise.empty()) {
        const QuantumState state = evolve_pure(x, params, config);
        m.raw = quantum::expectation(state, obs);
        if (want_per_qubit) {
            m.per_qubit_z.resize(nq);
            for (int q = 0; q < nq; ++q)
                m.per_qubit_z[q] = quantum::expectation(
                    state, PauliObservable::single_z(nq, q));
        }
    } else {
        const DensityMatrix rho = evolve_noisy(x, params, config);
        m.raw = quantum::expectation_density(rho, obs);
        if (want_per_qubit) {
            m.per_qubit_z.resize(nq);
            for (int q = 0; q < nq; ++q)
                m.per_qubit_z[q] = quantum::expectation_density(
                    rho, PauliObservable::single_z(nq, q));
        }
    }
    return m;
}

}  // namespace

int QnnConfig::head_parameter_count() const {
    if (!classical_head) return 0;
    const int hidden = classical_head->hidden_units;
    const int nq = ansatz.num_qubits;
    return hidden * nq + hidden + hidden + 1;
}

PauliObservable resolve_observable(const QnnConfig& config) {
    const int nq = config.ansatz.num_qubits;
    if (config.observable.empty())
        return PauliObservable::single_z(nq, 0);
    std::string s = config.observable;
    if (static_cast<int>(s.size()) > nq)
        throw std::invalid_argument("qnn: observable longer than register");
    s.append(nq - s.size(), 'I');
    return PauliObservable::parse(s);
}

std::vector<double> xavier_init(int fan_in, int fan_out, int count,
                                std::uint64_t seed) {
    if (fan_in < 0 || fan_out < 0 || fan_in + fan_out == 0)
        throw std::invalid_argument("xavier_init: fan_in + fan_out must be > 0");
    if (count <= 0)
        throw std::invalid_argument("xavier_init: count must be positive");
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    auto eng = rng::engine(seed, "xavier");
    std::uniform_real_distribution<double> dist(-bound, bound);
    std::vector<double> out(count);
    for (double& v : out) v = dist(eng);
    return out;
}

ParameterVector init_parameters(const QnnConfig& config) {
    validate_config(config);
    ParameterVector params;
    params.reserve(config.total_parameter_count());

    const int circuit = config.circuit_parameter_count();
    if (circuit > 0) {
        const int units_per_layer =
            config.ansatz.num_qubits *
            static_cast<int>(config.ansatz.rotation_pattern.size());
        if (config.init == InitKind::xavier) {
            auto v = xavier_init(units_per_layer, units_per_layer, circuit,
                                 rng::derive(config.seed, "init-circuit"));
            params.insert(params.end(), v.begin(), v.end());
        } else {
            auto eng = rng::engine(config.seed, "init-circuit");
            std::uniform_real_distribution<double> dist(-0.1, 0.1);
            for (int i = 0; i < circuit; ++i) params.push_back(dist(eng));
        }
    }
    if (config.classical_head) {
        const int hidden = config.classical_head->hidden_units;
        if (hidden <= 0)
            throw std::invalid_argument("qnn: hidden_units must be positive");
        const int nq = config.ansatz.num_qubits;
        auto w1 = xavier_init(nq, hidden, hidden * nq,
                              rng::derive(config.seed, "init-head-w1"));
        params.insert(params.end(), w1.begin(), w1.end());
        params.insert(params.end(), hidden, 0.0);  // b1
        auto w2 = xavier_init(hidden, 1, hidden,
                              rng::derive(config.seed, "init-head-w2"));
        params.insert(params.end(), w2.begin(), w2.end());
        params.push_back(0.0);  // b2
    }
    return params;
}

ForwardResult qnn_forward_detail(const FeatureVector& x,
                                 const ParameterVector& params,
                                 const QnnConfig& config) {
    validate_config(config);
    validate_params(params, config);
    const bool has_head = config.classical_head.has_value();
    const Measured m = measure(x, params, config, has_head);
    ForwardResult r;
    r.raw_expectation = m.raw;
    r.per_qubit_z = m.per_qubit_z;
    if (has_head)
        r.output = head_output(head_view(params, config), m.per_qubit_z);
    else
        r.output = 0.5 * (m.raw + 1.0);
    return r;
}

double qnn_forward(const FeatureVector& x, const ParameterVector& params,
                   const QnnConfig& config) {
    return qnn_forward_detail(x, params, config).output;
}

double mse_loss(const std::vector<double>& outputs,
                const std::vector<int>& targets) {
    if (outputs.empty() || outputs.size() != targets.size())
        throw std::invalid_argument("mse_loss: length mismatch or empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const double d = outputs[i] - targets[i];
        acc += d * d;
    }
    return acc / static_cast<double>(outputs.size());
}

double parameter_shift_gradient(const FeatureVector& x,
                                const ParameterVector& params,
                                const QnnConfig& config, int index) {
    validate_config(config);
    validate_params(params, config);
    if (index < 0 || index >= config.circuit_parameter_count())
        throw std::invalid_argument(
            "parameter_shift_gradient: index out of circuit-parameter range");
    constexpr double kShift = 1.5707963267948966;  // pi/2
    ParameterVector shifted = params;
    shifted[index] = params[index] + kShift;
    const double plus = measure(x, shifted, config, false).raw;
    shifted[index] = params[index] - kShift;
    const double minus = measure(x, shifted, config, false).raw;
    return 0.5 * (plus - minus);
}

ParameterVector optimizer_step(const ParameterVector& params,
                               const std::vector<double>& grads,
                               OptimizerState& state, OptimizerKind kind,
                               double learning_rate) {
    if (params.size() != grads.size())
        throw std::invalid_argument("optimizer_step: length mismatch");
    if (kind == OptimizerKind::simplex)
        throw std::invalid_argument(
            "optimizer_step: simplex is loss-driven; use NelderMead");
    const std::size_t n = params.size();
    if (state.m.size() != n) state.m.assign(n, 0.0);
    if (state.v.size() != n) state.v.assign(n, 0.0);
    constexpr double kEps = 1e-8;
    ParameterVector out = params;
    switch (kind) {
        case OptimizerKind::gd:
            for (std::size_t i = 0; i < n; ++i)
                out[i] -= learning_rate * grads[i];
            break;
        case OptimizerKind::rmsprop: {
            constexpr double kDecay = 0.9;
            for (std::size_t i = 0; i < n; ++i) {
                state.v[i] = kDecay * state.v[i] +
                             (1.0 - kDecay) * grads[i] * grads[i];
                out[i] -= learning_rate * grads[i] /
                          std::sqrt(state.v[i] + kEps);
            }
            break;
        }
        case OptimizerKind::adam: {
            constexpr double kBeta1 = 0.9;
            constexpr double kBeta2 = 0.999;
            ++state.step;
            const double bc1 = 1.0 - std::pow(kBeta1, state.step);
            const double bc2 = 1.0 - std::pow(kBeta2, state.step);
            for (std::size_t i = 0; i < n; ++i) {
                state.m[i] = kBeta1 * state.m[i] + (1.0 - kBeta1) * grads[i];
                state.v[i] =
                    kBeta2 * state.v[i] + (1.0 - kBeta2) * grads[i] * grads[i];
                const double mhat = state.m[i] / bc1;
                const double vhat = state.v[i] / bc2;
                out[i] -= learning_rate * mhat / (std::sqrt(vhat) + kEps);
            }
            break;
        }
        case OptimizerKind::simplex:
            break;  // unreachable
    }
    return out;
}

NelderMead::NelderMead(const ParameterVector& start, double initial_step,
                       const LossFn& loss) {
    const std::size_t n = start.size();
    simplex_.push_back(start);
    for (std::size_t i = 0; i < n; ++i) {
        ParameterVector v = start;
        v[i] += initial_step;
        simplex_.push_back(std::move(v));
    }
    values_.reserve(simplex_.size());
    for (const auto& v : simplex_) values_.push_back(loss(v));
    order();
}

void NelderMead::order() {
    std::vector<std::size_t> idx(simplex_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return values_[a] < values_[b];
    });
    std::vector<ParameterVector> s;
    std::vector<double> v;
    for (std::size_t i : idx) {
        s.push_back(std::move(simplex_[i]));
        v.push_back(values_[i]);
    }
    simplex_ = std::move(s);
    values_ = std::move(v);
}

double NelderMead::iterate(const LossFn& loss) {
    const std::size_t n = simplex_.size() - 1;
    ParameterVector centroid(simplex_[0].size(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < centroid.size(); ++d)
            centroid[d] += simplex_[i][d] / static_cast<double>(n);

    auto blend = [&](double t) {
        ParameterVector v(centroid.size());
        for (std::size_t d = 0; d < v.size(); ++d)
            v[d] = centroid[d] + t * (simplex_[n][d] - centroid[d]);
        return v;
    };

    const ParameterVector reflected = blend(-1.0);
    const double fr = loss(reflected);
    if (fr < values_[0]) {
        const ParameterVector expanded = blend(-2.0);
        const double fe = loss(expanded);
        if (fe < fr) {
            simplex_[n] = expanded;
            values_[n] = fe;
        } else {
            simplex_[n] = reflected;
            values_[n] = fr;
        }
    } else if (fr < values_[n - 1]) {
        simplex_[n] = reflected;
        values_[n] = fr;
    } else {
        const ParameterVector contracted = blend(0.5);
        const double fc = loss(contracted);
        if (fc < values_[n]) {
            simplex_[n] = contracted;
            values_[n] = fc;
        } else {
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t d = 0; d < centroid.size(); ++d)
                    simplex_[i][d] =
                        simplex_[0][d] + 0.5 * (simplex_[i][d] - simplex_[0][d]);
                values_[i] = loss(simplex_[i]);
            }
        }
    }
    order();
    return values_[0];
}

const ParameterVector& NelderMead::best() const { return simplex_[0]; }
double NelderMead::best_loss() const { return values_[0]; }

NeuronVerdict dead_neuron_check(const std::vector<double>& outputs) {
    if (outputs.size() < 2)
        throw std::invalid_argument("dead_neuron_check: batch size must be >= 2");
    double mean = 0.0;
    for (double v : outputs) mean += v;
    mean /= static_cast<double>(outputs.size());
    double var = 0.0;
    for (double v : outputs) var += (v - mean) * (v - mean);
    var /= static_cast<double>(outputs.size());
    return var < 1e-12 ? NeuronVerdict::dead : NeuronVerdict::healthy;
}

bool loss_plateau(const std::vector<double>& loss_history, int window) {
    if (static_cast<int>(loss_history.size()) < window + 1) return false;
    const std::size_t start = loss_history.size() - window - 1;
    for (std::size_t i = start; i + 1 < loss_history.size(); ++i)
        if (std::abs(loss_history[i + 1] - loss_history[i]) >= 1e-9)
            return false;
    return true;
}

namespace {

double batch_accuracy(const std::vector<double>& outputs,
                      const std::vector<int>& targets) {
    long correct = 0;
    for (std::size_t i = 0; i < outputs.size(); ++i)
        correct += ((outputs[i] >= 0.5) == (targets[i] == 1));
    return static_cast<double>(correct) / static_cast<double>(outputs.size());
}

// Loss gradient for one epoch. Circuit parameters use the shift rule (per
// qubit when a head consumes the <Z_q> vector); head weights are analytic.
std::vector<double> batch_gradient(const std::vector<FeatureVector>& xs,
                                   const std::vector<int>& targets,
                                   const ParameterVector& params,
                                   const QnnConfig& config,
                                   const std::vector<ForwardResult>& forwards) {
    const std::size_t n = xs.size();
    const int circuit = config.circuit_parameter_count();
    std::vector<double> grads(params.size(), 0.0);
    constexpr double kShift = 1.5707963267948966;

    if (!config.classical_head) {
        for (std::size_t s = 0; s < n; ++s) {
            const double dl_df =
                2.0 * (forwards[s].output - targets[s]) / static_cast<double>(n);
            for (int i = 0; i < circuit; ++i) {
                const double de =
                    parameter_shift_gradient(xs[s], params, config, i);
                grads[i] += dl_df * 0.5 * de;  // f = (<O>+1)/2
            }
        }
        return grads;
    }

    const HeadView h = head_view(params, config);
    const int nq = h.nq;
    for (std::size_t s = 0; s < n; ++s) {
        const std::vector<double>& z = forwards[s].per_qubit_z;
        // Recompute head activations for the backward pass.
        std::vector<double> a(h.hidden), relu(h.hidden);
        double o = h.b2[0];
        for (int u = 0; u < h.hidden; ++u) {
            double acc = h.b1[u];
            for (int q = 0; q < nq; ++q) acc += h.w1[u * nq + q] * z[q];
            a[u] = acc;
            relu[u] = std::max(0.0, acc);
            o += h.w2[u] * relu[u];
        }
        const double f = sigmoid(o);
        const double dl_do = 2.0 * (f - targets[s]) /
                             static_cast<double>(n) * f * (1.0 - f);

        // Head weights.
        double* gw1 = grads.data() + circuit;
        double* gb1 = gw1 + h.hidden * nq;
        double* gw2 = gb1 + h.hidden;
        double* gb2 = gw2 + h.hidden;
        std::vector<double> dl_dz(nq, 0.0);
        for (int u = 0; u < h.hidden; ++u) {
            gw2[u] += dl_do * relu[u];
            const double da = dl_do * h.w2[u] * (a[u] > 0.0 ? 1.0 : 0.0);
            gb1[u] += da;
            for (int q = 0; q < nq; ++q) {
                gw1[u * nq + q] += da * z[q];
                dl_dz[q] += da * h.w1[u * nq + q];
            }
        }
        gb2[0] += dl_do;

        // Circuit parameters through the <Z_q> vector.
        for (int i = 0; i < circuit; ++i) {
            ParameterVector shifted = params;
            shifted[i] = params[i] + kShift;
            const Measured plus = measure(xs[s], shifted, config, true);
            shifted[i] = params[i] - kShift;
            const Measured minus = measure(xs[s], shifted, config, true);
            for (int q = 0; q < nq; ++q)
                grads[i] += dl_dz[q] * 0.5 *
                            (plus.per_qubit_z[q] - minus.per_qubit_z[q]);
        }
    }
    return grads;
}

}  // namespace

QnnModel train_qnn(const std::vector<FeatureVector>& xs,
                   const std::vector<int>& targets, const QnnConfig& config) {
    validate_config(config);
    if (xs.empty() || xs.size() != targets.size())
        throw std::invalid_argument("train_qnn: empty or mismatched dataset");
    if (config.epochs < 1)
        throw std::invalid_argument("train_qnn: epochs must be >= 1");
    for (int t : targets)
        if (t != 0 && t != 1)
            throw std::invalid_argument("train_qnn: targets must be in {0,1}");

    QnnModel model;
    model.config = config;
    model.parameters = init_parameters(config);

    std::vector<double> loss_history;
    auto record_epoch = [&](const std::vector<double>& outputs, double loss) {
        EpochRecord rec;
        rec.loss = loss;
        rec.accuracy = batch_accuracy(outputs, targets);
        rec.dead = outputs.size() >= 2 &&
                   dead_neuron_check(outputs) == NeuronVerdict::dead;
        model.diagnostics.dead_neuron |= rec.dead;
        loss_history.push_back(loss);
        if (loss_plateau(loss_history)) model.diagnostics.plateau = true;
        model.history.push_back(rec);
    };

    auto batch_outputs = [&](const ParameterVector& p) {
        std::vector<double> outputs;
        outputs.reserve(xs.size());
        for (const auto& x : xs)
            outputs.push_back(qnn_forward(x, p, config));
        return outputs;
    };

    if (config.optimizer == OptimizerKind::simplex) {
        auto loss_fn = [&](const ParameterVector& p) {
            return mse_loss(batch_outputs(p), targets);
        };
        NelderMead nm(model.parameters, 0.25, loss_fn);
        for (int epoch = 0; epoch < config.epochs; ++epoch) {
            nm.iterate(loss_fn);
            model.parameters = nm.best();
            const auto outputs = batch_outputs(model.parameters);
            record_epoch(outputs, nm.best_loss());
        }
        return model;
    }

    OptimizerState state;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::vector<ForwardResult> forwards;
        forwards.reserve(xs.size());
        std::vector<double> outputs;
        outputs.reserve(xs.size());
        for (const auto& x : xs) {
            forwards.push_back(qnn_forward_detail(x, model.parameters, config));
            outputs.push_back(forwards.back().output);
        }
        record_epoch(outputs, mse_loss(outputs, targets));
        const auto grads =
            batch_gradient(xs, targets, model.parameters, config, forwards);
        model.parameters = optimizer_step(model.parameters, grads, state,
                                          config.optimizer,
                                          config.learning_rate);
    }
    return model;
}

std::vector<double> qnn_outputs(const QnnModel& model,
                                const std::vector<FeatureVector>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs)
        out.push_back(qnn_forward(x, model.parameters, model.config));
    return out;
}

}  // namespace aquakern::qnn

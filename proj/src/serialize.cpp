#include "aquakern/serialize.hpp"

#include <stdexcept>

using nlohmann::json;

namespace {

template <typename T>
void get_if_present(const json& j, const char* key, T& out) {
    if (j.contains(key)) j.at(key).get_to(out);
}

}  // namespace

namespace aquakern::encoding {

void to_json(json& j, const FeatureMapSpec& s) {
    j = json{{"scheme", s.scheme == EncodingScheme::angle ? "angle" : "amplitude"},
             {"num_qubits", s.num_qubits},
             {"entangling", s.entangling},
             {"repetitions", s.repetitions}};
}

void from_json(const json& j, FeatureMapSpec& s) {
    std::string scheme = "angle";
    get_if_present(j, "scheme", scheme);
    if (scheme == "angle")
        s.scheme = EncodingScheme::angle;
    else if (scheme == "amplitude")
        s.scheme = EncodingScheme::amplitude;
    else
        throw std::invalid_argument("feature map: unknown scheme '" + scheme +
                                    "'");
    get_if_present(j, "num_qubits", s.num_qubits);
    get_if_present(j, "entangling", s.entangling);
    get_if_present(j, "repetitions", s.repetitions);
}

}  // namespace aquakern::encoding

namespace aquakern::quantum {

void to_json(json& j, const NoiseChannel& c) {
    j = json{{"kind", c.kind == NoiseChannel::Kind::depolarizing
                          ? "depolarizing"
                          : "amplitude_damping"},
             {"probability", c.probability},
             {"target", c.target}};
}

void from_json(const json& j, NoiseChannel& c) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "depolarizing")
        c.kind = NoiseChannel::Kind::depolarizing;
    else if (kind == "amplitude_damping")
        c.kind = NoiseChannel::Kind::amplitude_damping;
    else
        throw std::invalid_argument("noise channel: unknown kind '" + kind +
                                    "'");
    c.probability = j.at("probability").get<double>();
    c.target = 0;
    get_if_present(j, "target", c.target);
}

}  // namespace aquakern::quantum

namespace aquakern::kernels {

void to_json(json& j, const KernelSpec& s) {
    const char* kind = "rbf";
    switch (s.kind) {
        case KernelKind::linear: kind = "linear"; break;
        case KernelKind::polynomial: kind = "polynomial"; break;
        case KernelKind::rbf: kind = "rbf"; break;
        case KernelKind::quantum: kind = "quantum"; break;
    }
    j = json{{"kind", kind}, {"beta", s.beta}, {"r", s.r}, {"degree", s.degree}};
    if (s.kind == KernelKind::quantum) {
        j["feature_map"] = s.feature_map;
        if (s.shots) j["shots"] = *s.shots;
        j["shot_seed"] = s.shot_seed;
    }
}

void from_json(const json& j, KernelSpec& s) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear")
        s.kind = KernelKind::linear;
    else if (kind == "polynomial" || kind == "poly")
        s.kind = KernelKind::polynomial;
    else if (kind == "rbf")
        s.kind = KernelKind::rbf;
    else if (kind == "quantum")
        s.kind = KernelKind::quantum;
    else
        throw std::invalid_argument("kernel: unknown kind '" + kind + "'");
    get_if_present(j, "beta", s.beta);
    get_if_present(j, "r", s.r);
    get_if_present(j, "degree", s.degree);
    if (j.contains("feature_map")) j.at("feature_map").get_to(s.feature_map);
    if (j.contains("shots")) s.shots = j.at("shots").get<long>();
    get_if_present(j, "shot_seed", s.shot_seed);
}

}  // namespace aquakern::kernels

namespace aquakern::svc {

void to_json(json& j, const SvmTrainConfig& c) {
    j = json{{"C", c.C},
             {"tolerance", c.tolerance},
             {"max_passes", c.max_passes},
             {"seed", c.seed}};
}

void from_json(const json& j, SvmTrainConfig& c) {
    get_if_present(j, "C", c.C);
    get_if_present(j, "tolerance", c.tolerance);
    get_if_present(j, "max_passes", c.max_passes);
    get_if_present(j, "seed", c.seed);
}

void to_json(json& j, const SvmModel& m) {
    j = json{{"alphas", m.alphas},
             {"bias", m.bias},
             {"support_indices", m.support_indices},
             {"labels", m.labels},
             {"kernel", m.kernel_spec},
             {"training_points", m.training_points},
             {"C", m.C}};
}

void from_json(const json& j, SvmModel& m) {
    j.at("alphas").get_to(m.alphas);
    j.at("bias").get_to(m.bias);
    j.at("support_indices").get_to(m.support_indices);
    j.at("labels").get_to(m.labels);
    j.at("kernel").get_to(m.kernel_spec);
    j.at("training_points").get_to(m.training_points);
    get_if_present(j, "C", m.C);
}

}  // namespace aquakern::svc

namespace aquakern::qnn {

namespace {

char rotation_letter(quantum::GateKind k) {
    switch (k) {
        case quantum::GateKind::RX: return 'X';
        case quantum::GateKind::RY: return 'Y';
        case quantum::GateKind::RZ: return 'Z';
        default: break;
    }
    throw std::invalid_argument("ansatz: non-rotation gate in pattern");
}

quantum::GateKind rotation_from_letter(char c) {
    switch (c) {
        case 'X': return quantum::GateKind::RX;
        case 'Y': return quantum::GateKind::RY;
        case 'Z': return quantum::GateKind::RZ;
        default: break;
    }
    throw std::invalid_argument(std::string("ansatz: unknown rotation '") + c +
                                "'");
}

}  // namespace

void to_json(json& j, const AnsatzSpec& s) {
    std::string pattern;
    for (auto k : s.rotation_pattern) pattern += rotation_letter(k);
    j = json{{"num_qubits", s.num_qubits},
             {"layers", s.layers},
             {"rotations", pattern},
             {"entangler", s.entangler}};
}

void from_json(const json& j, AnsatzSpec& s) {
    get_if_present(j, "num_qubits", s.num_qubits);
    get_if_present(j, "layers", s.layers);
    if (j.contains("rotations")) {
        const std::string pattern = j.at("rotations").get<std::string>();
        s.rotation_pattern.clear();
        for (char c : pattern) s.rotation_pattern.push_back(rotation_from_letter(c));
    }
    get_if_present(j, "entangler", s.entangler);
}

void to_json(json& j, const QnnConfig& c) {
    const char* opt = "adam";
    switch (c.optimizer) {
        case OptimizerKind::adam: opt = "adam"; break;
        case OptimizerKind::gd: opt = "gd"; break;
        case OptimizerKind::rmsprop: opt = "rmsprop"; break;
        case OptimizerKind::simplex: opt = "simplex"; break;
    }
    j = json{{"ansatz", c.ansatz},
             {"observable", c.observable},
             {"encoding", c.encoding},
             {"optimizer", opt},
             {"learning_rate", c.learning_rate},
             {"epochs", c.epochs},
             {"init", c.init == InitKind::xavier ? "xavier" : "uniform_small"},
             {"noise", c.noise},
             {"seed", c.seed}};
    if (c.classical_head)
        j["classical_head"] = json{{"hidden_units", c.classical_head->hidden_units}};
}

void from_json(const json& j, QnnConfig& c) {
    if (j.contains("ansatz")) j.at("ansatz").get_to(c.ansatz);
    get_if_present(j, "observable", c.observable);
    if (j.contains("encoding")) j.at("encoding").get_to(c.encoding);
    if (j.contains("optimizer")) {
        const std::string opt = j.at("optimizer").get<std::string>();
        if (opt == "adam")
            c.optimizer = OptimizerKind::adam;
        else if (opt == "gd" || opt == "gradient_descent")
            c.optimizer = OptimizerKind::gd;
        else if (opt == "rmsprop")
            c.optimizer = OptimizerKind::rmsprop;
        else if (opt == "simplex" || opt == "cobyla")
            c.optimizer = OptimizerKind::simplex;
        else
            throw std::invalid_argument("qnn: unknown optimizer '" + opt + "'");
    }
    get_if_present(j, "learning_rate", c.learning_rate);
    get_if_present(j, "epochs", c.epochs);
    if (j.contains("init")) {
        const std::string init = j.at("init").get<std::string>();
        if (init == "xavier")
            c.init = InitKind::xavier;
        else if (init == "uniform_small")
            c.init = InitKind::uniform_small;
        else
            throw std::invalid_argument("qnn: unknown init '" + init + "'");
    }
    if (j.contains("noise")) j.at("noise").get_to(c.noise);
    if (j.contains("classical_head") && !j.at("classical_head").is_null()) {
        ClassicalHeadSpec head;
        get_if_present(j.at("classical_head"), "hidden_units",
                       head.hidden_units);
        c.classical_head = head;
    }
    get_if_present(j, "seed", c.seed);
}

}  // namespace aquakern::qnn

namespace aquakern::metrics {

void to_json(json& j, const MetricsReport& r) {
    j = json{{"accuracy", r.accuracy},
             {"f1", r.f1},
             {"precision", r.precision},
             {"recall", r.recall},
             {"auroc", r.auroc},
             {"auprc", r.auprc},
             {"confusion",
              json{{"tp", r.confusion.tp},
                   {"fp", r.confusion.fp},
                   {"tn", r.confusion.tn},
                   {"fn", r.confusion.fn}}},
             {"any_undefined", r.any_undefined}};
}

}  // namespace aquakern::metrics

namespace aquakern::data {

void to_json(json& j, const IngestReport& r) {
    j = json{{"rows_read", r.rows_read},
             {"rows_rejected", r.rows_rejected},
             {"rows_imputed", r.rows_imputed},
             {"acceptable", r.acceptable},
             {"not_acceptable", r.not_acceptable}};
}

}  // namespace aquakern::data

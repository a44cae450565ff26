#include "aquakern/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include "aquakern/rng.hpp"
#include "aquakern/serialize.hpp"

namespace aquakern::experiment {

using nlohmann::json;

namespace {

constexpr double kHalfPi = 1.5707963267948966;

template <typename T>
void read_field(const json& j, const char* key, T& out,
                std::vector<std::string>& errors, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(out);
    } catch (const std::exception& e) {
        errors.push_back(where + "." + key + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write '" + path.string() + "'");
    out << content;
}

struct PreparedData {
    std::vector<data::FeatureVector> train_x, test_x;
    std::vector<int> train_y, test_y;  // +1 acceptable, -1 not
    std::optional<data::IngestReport> ingest;
    kernels::KernelMatrix* gram = nullptr;
};

PreparedData prepare(const ExperimentConfig& config) {
    data::Dataset ds;
    std::optional<data::IngestReport> ingest;
    if (config.dataset.csv_path) {
        data::IngestReport rep;
        try {
            ds = data::load_csv(*config.dataset.csv_path,
                                config.dataset.csv_options, &rep);
        } catch (const std::exception& e) {
            throw DataError(e.what());
        }
        ingest = rep;
    } else if (config.dataset.synthetic) {
        const auto& spec = *config.dataset.synthetic;
        try {
            ds = data::generate_synthetic(
                spec.n, spec.imbalance,
                rng::derive(config.seed, "synthetic-data"));
        } catch (const std::exception& e) {
            throw DataError(e.what());
        }
    } else {
        throw ConfigError("no dataset source configured");
    }
    if (ds.size() < 4) throw DataError("dataset too small after ingestion");

    data::Dataset train, test;
    try {
        if (config.paper_order) {
            const data::Dataset balanced =
                data::random_oversample(ds, rng::derive(config.seed, "oversample"));
            std::tie(train, test) =
                data::split(balanced, config.split.test_fraction,
                            config.split.stratify,
                            rng::derive(config.seed, "split"));
        } else {
            std::tie(train, test) =
                data::split(ds, config.split.test_fraction,
                            config.split.stratify,
                            rng::derive(config.seed, "split"));
            train = data::random_oversample(
                train, rng::derive(config.seed, "oversample"));
        }
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }

    const data::Dataset train_scaled = data::minmax_scale(train, 0.0, kHalfPi);
    PreparedData out;
    out.train_x = train_scaled.features;
    out.test_x = data::apply_scaling(train_scaled.scaling, test.features);
    out.train_y = train.label_signs();
    out.test_y = test.label_signs();
    out.ingest = ingest;
    return out;
}

kernels::KernelSpec resolve_kernel(const kernels::KernelSpec& spec,
                                   const PreparedData& pd,
                                   std::uint64_t root_seed) {
    kernels::KernelSpec k = spec;
    const int d = static_cast<int>(pd.train_x[0].size());
    if (k.kind == kernels::KernelKind::rbf && k.beta <= 0.0)
        k.beta = kernels::default_rbf_beta(pd.train_x);
    if (k.kind == kernels::KernelKind::quantum) {
        k.feature_map.num_qubits =
            encoding::required_qubits(k.feature_map.scheme, d);
        if (k.shots) k.shot_seed = rng::derive(root_seed, "kernel-shots");
    }
    return k;
}

qnn::QnnConfig resolve_qnn(const qnn::QnnConfig& spec, const PreparedData& pd,
                           std::uint64_t root_seed) {
    qnn::QnnConfig c = spec;
    const int d = static_cast<int>(pd.train_x[0].size());
    c.encoding.num_qubits = encoding::required_qubits(c.encoding.scheme, d);
    c.ansatz.num_qubits = c.encoding.num_qubits;
    c.seed = rng::derive(root_seed, "qnn-train");
    return c;
}

std::string history_csv(const std::vector<qnn::EpochRecord>& history) {
    std::ostringstream out;
    out.precision(17);
    out << "epoch,loss,accuracy\n";
    for (std::size_t i = 0; i < history.size(); ++i)
        out << i + 1 << ',' << history[i].loss << ',' << history[i].accuracy
            << '\n';
    return out.str();
}

std::string gram_csv(const kernels::KernelMatrix& gram) {
    std::ostringstream out;
    out.precision(17);
    for (int i = 0; i < gram.n; ++i) {
        for (int j = 0; j < gram.n; ++j)
            out << gram.at(i, j) << (j + 1 == gram.n ? '\n' : ',');
    }
    return out.str();
}

}  // namespace

ExperimentConfig config_from_json(const json& j,
                                  std::vector<std::string>& errors) {
    ExperimentConfig c;
    if (!j.is_object()) {
        errors.push_back("config: top-level value must be an object");
        return c;
    }
    read_field(j, "name", c.name, errors, "config");
    read_field(j, "seed", c.seed, errors, "config");
    read_field(j, "paper_order", c.paper_order, errors, "config");
    read_field(j, "out_dir", c.out_dir, errors, "config");
    read_field(j, "write_gram", c.write_gram, errors, "config");

    if (j.contains("dataset")) {
        const json& d = j.at("dataset");
        if (d.contains("csv")) {
            std::string path;
            read_field(d, "csv", path, errors, "dataset");
            c.dataset.csv_path = path;
            if (!path.empty() && !std::filesystem::exists(path))
                errors.push_back("dataset.csv: file does not exist: " + path);
            if (d.contains("csv_options")) {
                const json& o = d.at("csv_options");
                read_field(o, "ecoli_column", c.dataset.csv_options.ecoli_column,
                           errors, "dataset.csv_options");
                read_field(o, "threshold", c.dataset.csv_options.threshold,
                           errors, "dataset.csv_options");
                read_field(o, "impute_median",
                           c.dataset.csv_options.impute_median, errors,
                           "dataset.csv_options");
            }
        }
        if (d.contains("synthetic")) {
            SyntheticSpec s;
            const json& sj = d.at("synthetic");
            read_field(sj, "n", s.n, errors, "dataset.synthetic");
            read_field(sj, "imbalance", s.imbalance, errors,
                       "dataset.synthetic");
            if (s.n < 4) errors.push_back("dataset.synthetic.n: must be >= 4");
            if (!(s.imbalance > 0.0 && s.imbalance < 1.0))
                errors.push_back(
                    "dataset.synthetic.imbalance: must be in (0,1)");
            c.dataset.synthetic = s;
        }
        if (c.dataset.csv_path && c.dataset.synthetic)
            errors.push_back("dataset: csv and synthetic are mutually exclusive");
        if (!c.dataset.csv_path && !c.dataset.synthetic)
            errors.push_back("dataset: either csv or synthetic is required");
    } else {
        errors.push_back("config: 'dataset' is required");
    }

    if (j.contains("model")) {
        const json& m = j.at("model");
        std::string family = "qsvc";
        read_field(m, "family", family, errors, "model");
        if (family == "qsvc") {
            c.family = ModelFamily::qsvc;
            if (m.contains("kernel"))
                read_field(m, "kernel", c.kernel, errors, "model");
            else
                errors.push_back("model: qsvc requires a 'kernel' spec");
            read_field(m, "svm", c.svm, errors, "model");
            if (c.svm.C <= 0.0) errors.push_back("model.svm.C: must be > 0");
            if (c.svm.tolerance <= 0.0)
                errors.push_back("model.svm.tolerance: must be > 0");
            if (c.kernel.kind == kernels::KernelKind::polynomial &&
                c.kernel.degree < 1)
                errors.push_back("model.kernel.degree: must be >= 1");
            if (c.kernel.shots && *c.kernel.shots <= 0)
                errors.push_back("model.kernel.shots: must be positive");
        } else if (family == "qnn") {
            c.family = ModelFamily::qnn;
            read_field(m, "qnn", c.qnn_config, errors, "model");
            if (c.qnn_config.epochs < 1)
                errors.push_back("model.qnn.epochs: must be >= 1");
            if (c.qnn_config.learning_rate <= 0.0)
                errors.push_back("model.qnn.learning_rate: must be > 0");
            for (const auto& ch : c.qnn_config.noise)
                if (!(ch.probability >= 0.0 && ch.probability <= 1.0))
                    errors.push_back(
                        "model.qnn.noise: probability must be in [0,1]");
        } else {
            errors.push_back("model.family: must be 'qsvc' or 'qnn', got '" +
                             family + "'");
        }
    } else {
        errors.push_back("config: 'model' is required");
    }

    if (j.contains("split")) {
        const json& s = j.at("split");
        read_field(s, "test_fraction", c.split.test_fraction, errors, "split");
        read_field(s, "stratify", c.split.stratify, errors, "split");
    }
    if (!(c.split.test_fraction > 0.0 && c.split.test_fraction < 1.0))
        errors.push_back("split.test_fraction: must be in (0,1)");
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["name"] = c.name;
    j["seed"] = c.seed;
    j["paper_order"] = c.paper_order;
    if (c.dataset.csv_path) {
        j["dataset"]["csv"] = *c.dataset.csv_path;
        j["dataset"]["csv_options"] = {
            {"ecoli_column", c.dataset.csv_options.ecoli_column},
            {"threshold", c.dataset.csv_options.threshold},
            {"impute_median", c.dataset.csv_options.impute_median}};
    }
    if (c.dataset.synthetic) {
        j["dataset"]["synthetic"] = {{"n", c.dataset.synthetic->n},
                                     {"imbalance", c.dataset.synthetic->imbalance}};
    }
    if (c.family == ModelFamily::qsvc) {
        j["model"] = {{"family", "qsvc"}, {"kernel", c.kernel}, {"svm", c.svm}};
    } else {
        j["model"] = {{"family", "qnn"}, {"qnn", c.qnn_config}};
    }
    j["split"] = {{"test_fraction", c.split.test_fraction},
                  {"stratify", c.split.stratify}};
    if (!c.out_dir.empty()) j["out_dir"] = c.out_dir;
    if (c.write_gram) j["write_gram"] = true;
    return j;
}

json report_to_json(const RunReport& r) {
    json j;
    j["config"] = r.config_echo;
    j["metrics"] = r.metrics;
    j["diagnostics"] = {{"dead_neuron", r.diagnostics.dead_neuron},
                        {"plateau", r.diagnostics.plateau},
                        {"undefined_metrics", r.metrics.any_undefined}};
    if (r.gram)
        j["gram"] = {{"min_eigenvalue", r.gram->min_eigenvalue},
                     {"symmetry_residual", r.gram->symmetry_residual}};
    if (!r.history.empty()) {
        json h = json::array();
        for (const auto& rec : r.history)
            h.push_back({{"loss", rec.loss}, {"accuracy", rec.accuracy}});
        j["history"] = std::move(h);
    }
    if (r.ingest) j["ingest"] = *r.ingest;
    j["timing_seconds"] = r.seconds;
    return j;
}

RunReport run_experiment(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    report.config_echo = config_to_json(config);

    PreparedData pd = prepare(config);

    if (config.family == ModelFamily::qsvc) {
        const kernels::KernelSpec kspec =
            resolve_kernel(config.kernel, pd, config.seed);
        kernels::KernelMatrix gram;
        svc::SvmModel model;
        try {
            gram = kernels::gram_matrix(pd.train_x, kspec);
            svc::SvmTrainConfig svm_cfg = config.svm;
            svm_cfg.seed = rng::derive(config.seed, "smo");
            model = svc::train_svm(gram, pd.train_y, svm_cfg);
            model.training_points = pd.train_x;
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
        GramDiagnostics gd;
        gd.min_eigenvalue = gram.min_eigenvalue();
        gd.symmetry_residual = gram.symmetry_residual();
        report.gram = gd;

        const std::vector<double> scores = svc::decision_values(model, pd.test_x);
        for (double s : scores)
            if (!std::isfinite(s))
                throw NumericalError("non-finite decision value");
        std::vector<int> preds;
        preds.reserve(scores.size());
        for (double s : scores) preds.push_back(s >= 0.0 ? 1 : -1);
        try {
            report.metrics = metrics::evaluate(preds, scores, pd.test_y, 1);
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
        if (!config.out_dir.empty() && config.write_gram) {
            std::filesystem::create_directories(config.out_dir);
            write_file(std::filesystem::path(config.out_dir) / "gram.csv",
                       gram_csv(gram));
        }
    } else {
        const qnn::QnnConfig qcfg = resolve_qnn(config.qnn_config, pd, config.seed);
        std::vector<int> targets;
        targets.reserve(pd.train_y.size());
        for (int y : pd.train_y) targets.push_back(y > 0 ? 1 : 0);
        qnn::QnnModel model;
        try {
            model = qnn::train_qnn(pd.train_x, targets, qcfg);
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
        report.history = model.history;
        report.diagnostics = model.diagnostics;

        const std::vector<double> outputs = qnn::qnn_outputs(model, pd.test_x);
        for (double o : outputs)
            if (!std::isfinite(o)) throw NumericalError("non-finite QNN output");
        std::vector<int> preds;
        preds.reserve(outputs.size());
        for (double o : outputs) preds.push_back(o >= 0.5 ? 1 : -1);
        try {
            report.metrics = metrics::evaluate(preds, outputs, pd.test_y, 1);
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
    }

    report.ingest = pd.ingest;
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        const auto dir = std::filesystem::path(config.out_dir);
        write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
        if (!report.history.empty())
            write_file(dir / "history.csv", history_csv(report.history));
    }
    return report;
}

SweepResult sweep(const std::vector<ExperimentConfig>& configs) {
    if (configs.empty()) throw ConfigError("sweep: empty config list");
    SweepResult result;
    for (const auto& config : configs) {
        SweepRow row;
        row.name = config.name.empty()
                       ? "run-" + std::to_string(result.rows.size() + 1)
                       : config.name;
        try {
            const RunReport rep = run_experiment(config);
            row.ok = true;
            row.metrics = {{"accuracy", rep.metrics.accuracy},
                           {"f1", rep.metrics.f1},
                           {"precision", rep.metrics.precision},
                           {"recall", rep.metrics.recall},
                           {"auroc", rep.metrics.auroc},
                           {"auprc", rep.metrics.auprc}};
            if (!rep.history.empty())
                row.metrics["loss"] = rep.history.back().loss;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        result.rows.push_back(std::move(row));
    }

    const std::vector<std::string> cols = {"accuracy", "f1",    "precision",
                                           "recall",   "auroc", "auprc",
                                           "loss"};
    std::ostringstream csv, table;
    csv << "name,ok";
    for (const auto& c : cols) csv << ',' << c;
    csv << ",error\n";
    table << "name            ok  ";
    for (const auto& c : cols) {
        table << c;
        table << std::string(c.size() < 10 ? 10 - c.size() : 1, ' ');
    }
    table << '\n';
    for (const auto& row : result.rows) {
        csv << row.name << ',' << (row.ok ? "1" : "0");
        table << row.name << std::string(row.name.size() < 16
                                             ? 16 - row.name.size()
                                             : 1, ' ')
              << (row.ok ? "ok  " : "ERR ");
        for (const auto& c : cols) {
            csv << ',';
            char buf[32] = "";
            if (row.metrics.contains(c)) {
                std::snprintf(buf, sizeof buf, "%.4f",
                              row.metrics.at(c).get<double>());
                csv << buf;
            }
            table << buf << std::string(buf[0] ? (std::strlen(buf) < 10
                                                      ? 10 - std::strlen(buf)
                                                      : 1)
                                               : 10, ' ');
        }
        csv << ',' << row.error << '\n';
        table << (row.error.empty() ? "" : row.error) << '\n';
    }
    result.csv = csv.str();
    result.table = table.str();
    return result;
}

}  // namespace aquakern::experiment

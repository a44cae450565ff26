#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aquakern/data.hpp"
#include "aquakern/kernels.hpp"
#include "aquakern/metrics.hpp"
#include "aquakern/qnn.hpp"
#include "aquakern/svc.hpp"

namespace aquakern::experiment {

// Error taxonomy mapped onto CLI exit codes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;  // exit code 2
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;  // exit code 3
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;  // exit code 4
};

struct SyntheticSpec {
    long n = 32;
    double imbalance = 3.0 / 32.0;
};

struct DatasetSource {
    std::optional<std::string> csv_path;
    std::optional<SyntheticSpec> synthetic;
    data::CsvOptions csv_options;
};

enum class ModelFamily { qsvc, qnn };

struct SplitSpec {
    double test_fraction = 0.2;
    bool stratify = true;
};

struct ExperimentConfig {
    std::string name;
    DatasetSource dataset;
    // Default pipeline is split-then-oversample(train only); paper_order
    // rebalances the whole dataset before splitting instead.
    bool paper_order = false;
    ModelFamily family = ModelFamily::qsvc;
    kernels::KernelSpec kernel;   // qsvc; beta == 0 means "auto" for rbf
    svc::SvmTrainConfig svm;
    qnn::QnnConfig qnn_config;
    SplitSpec split;
    std::uint64_t seed = 0;
    std::string out_dir;          // empty: nothing persisted
    bool write_gram = false;
};

struct GramDiagnostics {
    double min_eigenvalue = 0.0;
    double symmetry_residual = 0.0;
};

struct RunReport {
    nlohmann::json config_echo;
    metrics::MetricsReport metrics;
    std::vector<qnn::EpochRecord> history;      // qnn only
    std::optional<GramDiagnostics> gram;        // qsvc only
    qnn::Diagnostics diagnostics;
    std::optional<data::IngestReport> ingest;   // csv sources only
    double seconds = 0.0;
};

// Collects every validation problem instead of stopping at the first.
ExperimentConfig config_from_json(const nlohmann::json& j,
                                  std::vector<std::string>& errors);
nlohmann::json config_to_json(const ExperimentConfig& config);
nlohmann::json report_to_json(const RunReport& report);

// Runs the full pipeline: ingest/generate, rebalance, split, scale, train,
// evaluate. Deterministic given config + seed. Persists report.json (and
// history.csv / gram.csv) under config.out_dir when set.
RunReport run_experiment(const ExperimentConfig& config);

struct SweepRow {
    std::string name;
    bool ok = false;
    std::string error;
    nlohmann::json metrics;  // metric columns or {loss, accuracy}
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::string csv;
    std::string table;  // aligned text
};

// Runs every config; per-row failures are recorded without aborting.
SweepResult sweep(const std::vector<ExperimentConfig>& configs);

}  // namespace aquakern::experiment

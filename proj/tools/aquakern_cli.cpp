// aquakern: experiment runner for quantum-kernel SVMs and variational QNNs
// on small tabular water-quality datasets.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aquakern/experiment.hpp"
#include "aquakern/serialize.hpp"
#include "aquakern/simd/kernels.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

using aquakern::experiment::ExperimentConfig;
using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw aquakern::experiment::ConfigError("cannot open config '" + path +
                                                "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw aquakern::experiment::ConfigError("config '" + path +
                                                "': " + e.what());
    }
}

// Seed priority: --seed flag, config value, AQUAKERN_SEED env.
void apply_seed_sources(ExperimentConfig& config, const json& raw,
                        std::optional<std::uint64_t> flag_seed) {
    if (flag_seed) {
        config.seed = *flag_seed;
        return;
    }
    if (raw.contains("seed")) return;  // already applied by the parser
    if (const char* env = std::getenv("AQUAKERN_SEED"))
        config.seed = std::strtoull(env, nullptr, 10);
}

ExperimentConfig parse_config(const json& raw,
                              std::optional<std::uint64_t> flag_seed,
                              const std::string& out_override) {
    std::vector<std::string> errors;
    ExperimentConfig config =
        aquakern::experiment::config_from_json(raw, errors);
    if (!errors.empty()) {
        json err = {{"error", "invalid configuration"}, {"problems", errors}};
        std::cerr << err.dump(2) << '\n';
        std::exit(kExitConfig);
    }
    apply_seed_sources(config, raw, flag_seed);
    if (!out_override.empty()) config.out_dir = out_override;
    return config;
}

int fail(const char* kind, const std::exception& e, int code) {
    json err = {{"error", kind}, {"message", e.what()}};
    std::cerr << err.dump() << '\n';
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const aquakern::experiment::ConfigError& e) {
        return fail("config", e, kExitConfig);
    } catch (const aquakern::experiment::DataError& e) {
        return fail("data", e, kExitData);
    } catch (const aquakern::experiment::NumericalError& e) {
        return fail("numerical", e, kExitNumerical);
    } catch (const std::exception& e) {
        return fail("internal", e, kExitNumerical);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aquakern: quantum-kernel SVC and QNN experiment runner"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed_flag;
    bool quiet = false;
    app.add_flag("--quiet", quiet, "suppress stdout summaries");

    auto add_common = [&](CLI::App* cmd, bool config_required = true) {
        auto* opt = cmd->add_option("--config", config_path,
                                    "experiment config (JSON)");
        if (config_required) opt->required();
        cmd->add_option("--seed", seed_flag, "root seed (overrides config)");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_flag("--quiet", quiet, "suppress stdout summaries");
    };

    auto* run_cmd = app.add_subcommand("run", "run one experiment");
    add_common(run_cmd);

    auto* sweep_cmd =
        app.add_subcommand("sweep", "run a JSON array of experiments");
    add_common(sweep_cmd);

    auto* gen_cmd =
        app.add_subcommand("generate-data", "write a synthetic dataset CSV");
    long gen_n = 32;
    double gen_imbalance = 3.0 / 32.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out = "synthetic.csv";
    gen_cmd->add_option("--n", gen_n, "number of samples");
    gen_cmd->add_option("--imbalance", gen_imbalance,
                        "acceptable-class fraction");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output CSV path");
    gen_cmd->add_flag("--quiet", quiet, "suppress stdout summaries");

    auto* gram_cmd = app.add_subcommand(
        "inspect-gram", "compute Gram diagnostics for a config's kernel");
    add_common(gram_cmd);

    auto* version_cmd = app.add_subcommand("version", "print version");

    CLI11_PARSE(app, argc, argv);

    if (version_cmd->parsed()) {
        std::cout << "aquakern " << kVersion << " (simd: "
                  << aquakern::simd::active_kernels().name << ")\n";
        return 0;
    }

    if (gen_cmd->parsed()) {
        return guarded([&] {
            aquakern::data::Dataset ds;
            try {
                ds = aquakern::data::generate_synthetic(gen_n, gen_imbalance,
                                                        gen_seed);
            } catch (const std::invalid_argument& e) {
                throw aquakern::experiment::ConfigError(e.what());
            }
            aquakern::data::save_csv(ds, gen_out);
            if (!quiet) {
                const auto [acc, bad] = ds.class_counts();
                json summary = {{"written", gen_out},
                                {"samples", ds.size()},
                                {"acceptable", acc},
                                {"not_acceptable", bad}};
                std::cout << summary.dump(2) << '\n';
            }
            return 0;
        });
    }

    if (run_cmd->parsed()) {
        return guarded([&] {
            const json raw = load_json(config_path);
            const ExperimentConfig config =
                parse_config(raw, seed_flag, out_dir);
            const auto report = aquakern::experiment::run_experiment(config);
            if (!quiet)
                std::cout << aquakern::experiment::report_to_json(report).dump(2)
                          << '\n';
            return 0;
        });
    }

    if (sweep_cmd->parsed()) {
        return guarded([&] {
            const json raw = load_json(config_path);
            if (!raw.is_array() || raw.empty())
                throw aquakern::experiment::ConfigError(
                    "sweep config must be a nonempty JSON array");
            std::vector<ExperimentConfig> configs;
            for (const auto& item : raw) {
                ExperimentConfig c = parse_config(item, seed_flag, "");
                if (!out_dir.empty() && !c.name.empty())
                    c.out_dir = (std::filesystem::path(out_dir) / c.name).string();
                configs.push_back(std::move(c));
            }
            const auto result = aquakern::experiment::sweep(configs);
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                std::ofstream csv(std::filesystem::path(out_dir) / "sweep.csv");
                csv << result.csv;
            }
            if (!quiet) std::cout << result.table;
            for (const auto& row : result.rows)
                if (!row.ok) return kExitData;
            return 0;
        });
    }

    if (gram_cmd->parsed()) {
        return guarded([&] {
            const json raw = load_json(config_path);
            ExperimentConfig config = parse_config(raw, seed_flag, out_dir);
            if (config.family != aquakern::experiment::ModelFamily::qsvc)
                throw aquakern::experiment::ConfigError(
                    "inspect-gram requires a qsvc config");
            config.write_gram = true;
            const auto report = aquakern::experiment::run_experiment(config);
            json diag = {{"min_eigenvalue", report.gram->min_eigenvalue},
                         {"symmetry_residual", report.gram->symmetry_residual}};
            if (!quiet) std::cout << diag.dump(2) << '\n';
            return 0;
        });
    }

    return 0;
}

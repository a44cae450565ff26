#pragma once

#include <nlohmann/json.hpp>

#include "aquakern/data.hpp"
#include "aquakern/kernels.hpp"
#include "aquakern/metrics.hpp"
#include "aquakern/qnn.hpp"
#include "aquakern/svc.hpp"

// JSON bindings for the config and model surfaces exposed by the CLI.

namespace aquakern::encoding {
void to_json(nlohmann::json& j, const FeatureMapSpec& s);
void from_json(const nlohmann::json& j, FeatureMapSpec& s);
}  // namespace aquakern::encoding

namespace aquakern::quantum {
void to_json(nlohmann::json& j, const NoiseChannel& c);
void from_json(const nlohmann::json& j, NoiseChannel& c);
}  // namespace aquakern::quantum

namespace aquakern::kernels {
void to_json(nlohmann::json& j, const KernelSpec& s);
void from_json(const nlohmann::json& j, KernelSpec& s);
}  // namespace aquakern::kernels

namespace aquakern::svc {
void to_json(nlohmann::json& j, const SvmTrainConfig& c);
void from_json(const nlohmann::json& j, SvmTrainConfig& c);
void to_json(nlohmann::json& j, const SvmModel& m);
void from_json(const nlohmann::json& j, SvmModel& m);
}  // namespace aquakern::svc

namespace aquakern::qnn {
void to_json(nlohmann::json& j, const AnsatzSpec& s);
void from_json(const nlohmann::json& j, AnsatzSpec& s);
void to_json(nlohmann::json& j, const QnnConfig& c);
void from_json(const nlohmann::json& j, QnnConfig& c);
}  // namespace aquakern::qnn

namespace aquakern::metrics {
// Keys match the reported table columns, lowercased.
void to_json(nlohmann::json& j, const MetricsReport& r);
}  // namespace aquakern::metrics

namespace aquakern::data {
void to_json(nlohmann::json& j, const IngestReport& r);
}  // namespace aquakern::data

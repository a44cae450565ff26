#pragma once

#include <vector>

namespace aquakern::metrics {

struct ConfusionCounts {
    long tp = 0;
    long fp = 0;
    long tn = 0;
    long fn = 0;

    long total() const { return tp + fp + tn + fn; }
};

struct ThresholdMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    // Set when a zero denominator forced the corresponding value to 0.
    bool precision_undefined = false;
    bool recall_undefined = false;
    bool f1_undefined = false;
};

struct MetricsReport {
    double accuracy = 0.0;
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double auroc = 0.0;
    double auprc = 0.0;
    ConfusionCounts confusion;
    bool any_undefined = false;
};

// Counts with the declared positive label. Throws std::invalid_argument on
// mismatched or empty input.
ConfusionCounts confusion(const std::vector<int>& predictions,
                          const std::vector<int>& truths, int positive);

ThresholdMetrics threshold_metrics(const ConfusionCounts& counts);

// Rank-statistic AUROC (Mann-Whitney, ties counted half). Throws
// std::invalid_argument when only one class is present.
double auroc(const std::vector<double>& scores, const std::vector<int>& truths,
             int positive);

// Step-wise area under the precision-recall curve over descending unique
// score thresholds, no interpolation. Throws std::invalid_argument when no
// positive truths exist.
double auprc(const std::vector<double>& scores, const std::vector<int>& truths,
             int positive);

// Full report from hard predictions plus continuous scores.
MetricsReport evaluate(const std::vector<int>& predictions,
                       const std::vector<double>& scores,
                       const std::vector<int>& truths, int positive);

}  // namespace aquakern::metrics

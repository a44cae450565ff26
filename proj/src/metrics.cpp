#include "aquakern/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace aquakern::metrics {
namespace {

void check_pair(std::size_t a, std::size_t b) {
    if (a == 0 || a != b)
        throw std::invalid_argument("metrics: length mismatch or empty input");
}

}  // namespace

ConfusionCounts confusion(const std::vector<int>& predictions,
                          const std::vector<int>& truths, int positive) {
    check_pair(predictions.size(), truths.size());
    ConfusionCounts c;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        const bool truth_pos = truths[i] == positive;
        const bool pred_pos = predictions[i] == positive;
        if (truth_pos && pred_pos)
            ++c.tp;
        else if (!truth_pos && pred_pos)
            ++c.fp;
        else if (!truth_pos && !pred_pos)
            ++c.tn;
        else
            ++c.fn;
    }
    return c;
}

ThresholdMetrics threshold_metrics(const ConfusionCounts& c) {
    if (c.total() <= 0)
        throw std::invalid_argument("threshold_metrics: empty counts");
    ThresholdMetrics m;
    m.accuracy = static_cast<double>(c.tp + c.tn) / c.total();
    if (c.tp + c.fp > 0)
        m.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
    else
        m.precision_undefined = true;
    if (c.tp + c.fn > 0)
        m.recall = static_cast<double>(c.tp) / (c.tp + c.fn);
    else
        m.recall_undefined = true;
    if (m.precision + m.recall > 0.0)
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    else
        m.f1_undefined = true;
    return m;
}

double auroc(const std::vector<double>& scores, const std::vector<int>& truths,
             int positive) {
    check_pair(scores.size(), truths.size());
    const std::size_t n = scores.size();
    long pos = 0;
    for (int t : truths) pos += (t == positive);
    const long neg = static_cast<long>(n) - pos;
    if (pos == 0 || neg == 0)
        throw std::invalid_argument("auroc: both classes required");

    // Midrank sum of the positive class.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] < scores[b];
    });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = 0.5 * (static_cast<double>(i + 1) +
                                      static_cast<double>(j));  // 1-based
        for (std::size_t k = i; k < j; ++k)
            if (truths[order[k]] == positive) rank_sum_pos += midrank;
        i = j;
    }
    const double u = rank_sum_pos - 0.5 * pos * (pos + 1.0);
    return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

double auprc(const std::vector<double>& scores, const std::vector<int>& truths,
             int positive) {
    check_pair(scores.size(), truths.size());
    const std::size_t n = scores.size();
    long total_pos = 0;
    for (int t : truths) total_pos += (t == positive);
    if (total_pos == 0)
        throw std::invalid_argument("auprc: no positive truths");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    double area = 0.0;
    double prev_recall = 0.0;
    long tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        for (std::size_t k = i; k < j; ++k) {
            if (truths[order[k]] == positive)
                ++tp;
            else
                ++fp;
        }
        const double recall = static_cast<double>(tp) / total_pos;
        const double precision = static_cast<double>(tp) / (tp + fp);
        area += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    return area;
}

MetricsReport evaluate(const std::vector<int>& predictions,
                       const std::vector<double>& scores,
                       const std::vector<int>& truths, int positive) {
    MetricsReport r;
    r.confusion = confusion(predictions, truths, positive);
    const ThresholdMetrics m = threshold_metrics(r.confusion);
    r.accuracy = m.accuracy;
    r.precision = m.precision;
    r.recall = m.recall;
    r.f1 = m.f1;
    r.any_undefined =
        m.precision_undefined || m.recall_undefined || m.f1_undefined;
    r.auroc = auroc(scores, truths, positive);
    r.auprc = auprc(scores, truths, positive);
    return r;
}

}  // namespace aquakern::metrics

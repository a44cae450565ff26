#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aquakern/encoding.hpp"

namespace aquakern::data {

using encoding::FeatureVector;

enum class Label { acceptable, not_acceptable };

// acceptable is the positive class (+1) throughout the toolkit.
inline int label_sign(Label l) { return l == Label::acceptable ? 1 : -1; }

inline constexpr double kEcoliThreshold = 235.0;  // MPN/100mL, inclusive
inline constexpr const char* kEcoliColumn = "E.coli - (MPN/100mL)";

struct ScalingParams {
    std::vector<double> col_min;
    std::vector<double> col_max;
    double range_lo = 0.0;
    double range_hi = 0.0;
    bool fitted = false;
};

struct Dataset {
    std::vector<std::string> column_names;        // feature columns only
    std::vector<FeatureVector> features;          // one row per sample
    std::vector<double> ecoli;                    // MPN/100mL per sample
    std::vector<Label> labels;
    ScalingParams scaling;

    std::size_t size() const { return features.size(); }
    std::pair<long, long> class_counts() const;   // {acceptable, not_acceptable}
    std::vector<int> label_signs() const;
};

struct IngestReport {
    long rows_read = 0;
    long rows_rejected = 0;
    long rows_imputed = 0;
    long acceptable = 0;
    long not_acceptable = 0;
};

// acceptable iff ecoli <= threshold. Throws std::invalid_argument for
// negative input.
Label label_by_ecoli(double ecoli, double threshold = kEcoliThreshold);

struct CsvOptions {
    std::string ecoli_column = kEcoliColumn;
    double threshold = kEcoliThreshold;
    bool impute_median = false;  // default: reject rows with missing values
};

// Comma-separated UTF-8 with a header row; decimal point '.'. Throws
// std::runtime_error when the file or the E.coli column is missing.
Dataset load_csv(const std::string& path, const CsvOptions& options,
                 IngestReport* report = nullptr);

void save_csv(const Dataset& ds, const std::string& path);

// Affine per-column map onto [lo, hi]; constant columns map to the range
// midpoint. Parameters are stored on the result for test-set reuse.
Dataset minmax_scale(const Dataset& ds, double lo = 0.0,
                     double hi = 1.5707963267948966);

// Applies previously fitted parameters to new raw features.
std::vector<FeatureVector> apply_scaling(const ScalingParams& params,
                                         const std::vector<FeatureVector>& xs);

// Inverse of the fitted map for one value of one column.
double unscale_value(const ScalingParams& params, std::size_t column,
                     double value);

// Duplicates minority samples with replacement (seeded) until the class
// counts are equal; output order is shuffled deterministically. Throws
// std::invalid_argument when only one class is present.
Dataset random_oversample(const Dataset& ds, std::uint64_t seed);

// Stratified when requested: per-class test counts round(fraction * n_c).
std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction,
                                  bool stratify, std::uint64_t seed);

// Schema-compatible synthetic generator: acceptable samples cluster near
// the middle of each column's range while unacceptable samples sit on a
// noisy shell around them, so the classes overlap but are not linearly
// separable. E.coli values are drawn so the 235 threshold reproduces the
// requested imbalance exactly.
Dataset generate_synthetic(long n, double imbalance, std::uint64_t seed);

}  // namespace aquakern::data

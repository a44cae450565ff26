#include "aquakern/data.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "aquakern/rng.hpp"

namespace aquakern::data {
namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // Trim surrounding whitespace and CR.
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? ""
                                               : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_double(const std::string& s, double* out) {
    if (s.empty()) return false;
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) return false;
        *out = v;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.column_names = ds.column_names;
    out.scaling = ds.scaling;
    out.features.reserve(rows.size());
    for (std::size_t r : rows) {
        out.features.push_back(ds.features[r]);
        out.ecoli.push_back(ds.ecoli[r]);
        out.labels.push_back(ds.labels[r]);
    }
    return out;
}

}  // namespace

std::pair<long, long> Dataset::class_counts() const {
    long acc = 0, not_acc = 0;
    for (Label l : labels) (l == Label::acceptable ? acc : not_acc)++;
    return {acc, not_acc};
}

std::vector<int> Dataset::label_signs() const {
    std::vector<int> out;
    out.reserve(labels.size());
    for (Label l : labels) out.push_back(label_sign(l));
    return out;
}

Label label_by_ecoli(double ecoli, double threshold) {
    if (ecoli < 0.0)
        throw std::invalid_argument("label_by_ecoli: negative E.coli count");
    return ecoli <= threshold ? Label::acceptable : Label::not_acceptable;
}

Dataset load_csv(const std::string& path, const CsvOptions& options,
                 IngestReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("load_csv: empty file '" + path + "'");
    const std::vector<std::string> header = split_line(line);
    long ecoli_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == options.ecoli_column) ecoli_col = static_cast<long>(i);
    if (ecoli_col < 0)
        throw std::runtime_error("load_csv: column '" + options.ecoli_column +
                                 "' not found in '" + path + "'");

    // Non-feature columns: the label source plus the derived "label" column
    // save_csv writes (labels are always recomputed from E.coli).
    const auto skipped = [&](std::size_t i) {
        return static_cast<long>(i) == ecoli_col || header[i] == "label";
    };

    Dataset ds;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (!skipped(i)) ds.column_names.push_back(header[i]);

    IngestReport rep;
    std::vector<std::vector<double>> raw_rows;   // parsed feature cells
    std::vector<std::vector<bool>> missing_mask;
    std::vector<double> ecoli_vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rep.rows_read;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size()) {
            ++rep.rows_rejected;
            continue;
        }
        double ecoli_v = 0.0;
        if (!parse_double(cells[ecoli_col], &ecoli_v) || ecoli_v < 0.0) {
            ++rep.rows_rejected;  // the label source is never imputed
            continue;
        }
        std::vector<double> row;
        std::vector<bool> miss;
        bool any_missing = false;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (skipped(i)) continue;
            double v = 0.0;
            const bool ok = parse_double(cells[i], &v);
            row.push_back(ok ? v : 0.0);
            miss.push_back(!ok);
            any_missing |= !ok;
        }
        if (any_missing && !options.impute_median) {
            ++rep.rows_rejected;
            continue;
        }
        raw_rows.push_back(std::move(row));
        missing_mask.push_back(std::move(miss));
        ecoli_vals.push_back(ecoli_v);
    }

    if (options.impute_median && !raw_rows.empty()) {
        const std::size_t cols = ds.column_names.size();
        for (std::size_t c = 0; c < cols; ++c) {
            std::vector<double> present;
            for (std::size_t r = 0; r < raw_rows.size(); ++r)
                if (!missing_mask[r][c]) present.push_back(raw_rows[r][c]);
            double median = 0.0;
            if (!present.empty()) {
                std::sort(present.begin(), present.end());
                const std::size_t m = present.size();
                median = m % 2 ? present[m / 2]
                               : 0.5 * (present[m / 2 - 1] + present[m / 2]);
            }
            for (std::size_t r = 0; r < raw_rows.size(); ++r) {
                if (missing_mask[r][c]) {
                    raw_rows[r][c] = median;
                    ++rep.rows_imputed;
                }
            }
        }
    }

    for (std::size_t r = 0; r < raw_rows.size(); ++r) {
        const Label l = label_by_ecoli(ecoli_vals[r], options.threshold);
        (l == Label::acceptable ? rep.acceptable : rep.not_acceptable)++;
        ds.features.push_back(std::move(raw_rows[r]));
        ds.ecoli.push_back(ecoli_vals[r]);
        ds.labels.push_back(l);
    }
    if (report) *report = rep;
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_csv: cannot write '" + path + "'");
    for (const auto& c : ds.column_names) out << c << ',';
    out << kEcoliColumn << ",label\n";
    out.precision(17);
    for (std::size_t r = 0; r < ds.size(); ++r) {
        for (double v : ds.features[r]) out << v << ',';
        out << ds.ecoli[r] << ','
            << (ds.labels[r] == Label::acceptable ? "acceptable"
                                                  : "not_acceptable")
            << '\n';
    }
}

Dataset minmax_scale(const Dataset& ds, double lo, double hi) {
    if (ds.size() == 0)
        throw std::invalid_argument("minmax_scale: empty dataset");
    const std::size_t cols = ds.features[0].size();
    Dataset out = ds;
    out.scaling.col_min.assign(cols, 0.0);
    out.scaling.col_max.assign(cols, 0.0);
    out.scaling.range_lo = lo;
    out.scaling.range_hi = hi;
    out.scaling.fitted = true;
    for (std::size_t c = 0; c < cols; ++c) {
        double mn = ds.features[0][c], mx = mn;
        for (const auto& row : ds.features) {
            mn = std::min(mn, row[c]);
            mx = std::max(mx, row[c]);
        }
        out.scaling.col_min[c] = mn;
        out.scaling.col_max[c] = mx;
    }
    out.features = apply_scaling(out.scaling, ds.features);
    return out;
}

std::vector<FeatureVector> apply_scaling(const ScalingParams& params,
                                         const std::vector<FeatureVector>& xs) {
    if (!params.fitted)
        throw std::invalid_argument("apply_scaling: parameters not fitted");
    std::vector<FeatureVector> out;
    out.reserve(xs.size());
    const double mid = 0.5 * (params.range_lo + params.range_hi);
    for (const auto& x : xs) {
        if (x.size() != params.col_min.size())
            throw std::invalid_argument("apply_scaling: column count mismatch");
        FeatureVector row(x.size());
        for (std::size_t c = 0; c < x.size(); ++c) {
            const double span = params.col_max[c] - params.col_min[c];
            if (span == 0.0) {
                row[c] = mid;  // degenerate constant column
            } else {
                row[c] = params.range_lo + (x[c] - params.col_min[c]) / span *
                                               (params.range_hi - params.range_lo);
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

double unscale_value(const ScalingParams& params, std::size_t column,
                     double value) {
    if (!params.fitted || column >= params.col_min.size())
        throw std::invalid_argument("unscale_value: bad parameters");
    const double span = params.col_max[column] - params.col_min[column];
    if (span == 0.0) return params.col_min[column];
    return params.col_min[column] +
           (value - params.range_lo) / (params.range_hi - params.range_lo) *
               span;
}

Dataset random_oversample(const Dataset& ds, std::uint64_t seed) {
    const auto [acc, not_acc] = ds.class_counts();
    if (acc == 0 || not_acc == 0)
        throw std::invalid_argument(
            "random_oversample: both classes required");
    const Label minority =
        acc < not_acc ? Label::acceptable : Label::not_acceptable;
    const long deficit = std::abs(acc - not_acc);

    std::vector<std::size_t> minority_rows;
    for (std::size_t r = 0; r < ds.size(); ++r)
        if (ds.labels[r] == minority) minority_rows.push_back(r);

    std::vector<std::size_t> rows(ds.size());
    std::iota(rows.begin(), rows.end(), 0);
    auto eng = rng::engine(seed, "oversample");
    std::uniform_int_distribution<std::size_t> pick(0,
                                                    minority_rows.size() - 1);
    for (long i = 0; i < deficit; ++i)
        rows.push_back(minority_rows[pick(eng)]);
    std::shuffle(rows.begin(), rows.end(), eng);
    return take_rows(ds, rows);
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction,
                                  bool stratify, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("split: test_fraction must be in (0,1)");
    if (ds.size() < 2)
        throw std::invalid_argument("split: need at least 2 samples");

    auto eng = rng::engine(seed, "split");
    std::vector<std::size_t> test_rows, train_rows;
    if (stratify) {
        for (Label cls : {Label::acceptable, Label::not_acceptable}) {
            std::vector<std::size_t> rows;
            for (std::size_t r = 0; r < ds.size(); ++r)
                if (ds.labels[r] == cls) rows.push_back(r);
            if (rows.empty()) continue;
            std::shuffle(rows.begin(), rows.end(), eng);
            const long n_test = std::lround(test_fraction *
                                            static_cast<double>(rows.size()));
            for (std::size_t i = 0; i < rows.size(); ++i)
                (static_cast<long>(i) < n_test ? test_rows : train_rows)
                    .push_back(rows[i]);
        }
    } else {
        std::vector<std::size_t> rows(ds.size());
        std::iota(rows.begin(), rows.end(), 0);
        std::shuffle(rows.begin(), rows.end(), eng);
        const long n_test =
            std::lround(test_fraction * static_cast<double>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i)
            (static_cast<long>(i) < n_test ? test_rows : train_rows)
                .push_back(rows[i]);
    }
    if (train_rows.empty() || test_rows.empty())
        throw std::invalid_argument("split: a side would be empty");
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());
    return {take_rows(ds, train_rows), take_rows(ds, test_rows)};
}

Dataset generate_synthetic(long n, double imbalance, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("generate_synthetic: n must be >= 4");
    if (!(imbalance > 0.0 && imbalance < 1.0))
        throw std::invalid_argument(
            "generate_synthetic: imbalance must be in (0,1)");
    const long n_acc = std::lround(imbalance * static_cast<double>(n));
    if (n_acc < 1 || n_acc >= n)
        throw std::invalid_argument(
            "generate_synthetic: imbalance yields an empty class");

    // Water-chemistry column schema with plausible nominal ranges.
    static const struct {
        const char* name;
        double lo, hi;
    } kColumns[] = {
        {"NH3 (mg/L)", 0.0, 2.0},      {"NO2 (mg/L)", 0.0, 1.0},
        {"NO3 (mg/L)", 0.0, 10.0},     {"SO4 (mg/L)", 0.0, 250.0},
        {"Turbidity (NTU)", 0.0, 100.0}, {"Flow rate (m3/s)", 0.0, 5.0},
    };
    constexpr int kDim = 6;

    Dataset ds;
    for (const auto& c : kColumns) ds.column_names.push_back(c.name);

    auto eng = rng::engine(seed, "synthetic");
    std::normal_distribution<double> core_noise(0.0, 0.07);
    std::normal_distribution<double> shell_noise(0.0, 0.05);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> ecoli_acc(10.0, kEcoliThreshold);
    std::uniform_real_distribution<double> ecoli_bad(kEcoliThreshold + 1.0,
                                                     2000.0);

    for (long i = 0; i < n; ++i) {
        const bool acceptable = i < n_acc;
        std::array<double, kDim> unit{};
        if (acceptable) {
            for (int c = 0; c < kDim; ++c)
                unit[c] = std::clamp(0.5 + core_noise(eng), 0.0, 1.0);
        } else {
            // Point on a noisy shell around the acceptable core.
            std::array<double, kDim> dir{};
            double norm2 = 0.0;
            for (int c = 0; c < kDim; ++c) {
                dir[c] = gauss(eng);
                norm2 += dir[c] * dir[c];
            }
            const double inv = 1.0 / std::sqrt(std::max(norm2, 1e-12));
            const double radius = 0.32 + shell_noise(eng);
            for (int c = 0; c < kDim; ++c)
                unit[c] = std::clamp(0.5 + radius * dir[c] * inv, 0.0, 1.0);
        }
        FeatureVector row(kDim);
        for (int c = 0; c < kDim; ++c)
            row[c] = kColumns[c].lo + unit[c] * (kColumns[c].hi - kColumns[c].lo);
        const double ecoli = acceptable ? ecoli_acc(eng) : ecoli_bad(eng);
        ds.features.push_back(std::move(row));
        ds.ecoli.push_back(ecoli);
        ds.labels.push_back(label_by_ecoli(ecoli));
    }

    // Deterministic shuffle so class blocks are interleaved.
    std::vector<std::size_t> rows(ds.size());
    std::iota(rows.begin(), rows.end(), 0);
    std::shuffle(rows.begin(), rows.end(), eng);
    return take_rows(ds, rows);
}

}  // namespace aquakern::data

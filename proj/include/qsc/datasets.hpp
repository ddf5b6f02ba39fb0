#pragma once

#include "qsc/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsc {

/// n samples × d features with dense class labels 0..n_classes-1.
struct LabeledDataset {
    Matrix features;
    Labels labels;
    int n_classes = 0;
    std::string name;
    std::vector<std::string> class_names;

    Eigen::Index n() const { return features.rows(); }
    Eigen::Index d() const { return features.cols(); }
    std::vector<int> class_counts() const;
};

enum class DatasetKind { blobs, circles, moons, csv };

std::string_view to_string(DatasetKind kind);
DatasetKind dataset_kind_from_string(std::string_view name);

/// Generator / loader parameters. Fields irrelevant to `kind` are ignored.
struct DatasetSpec {
    DatasetKind kind = DatasetKind::blobs;
    int n_samples = 300;
    Seed seed = 0;

    // blobs
    int n_centers = 3;
    double cluster_std = 1.40;
    double center_box = 10.0;  // centres uniform in [-box, box]^2
    std::optional<Seed> center_seed;  // set: centres drawn from this seed instead of `seed`

    // circles / moons
    double noise = 0.0;
    double factor = 0.2;

    // csv
    std::string csv_path;
    std::string label_column = "label";

    /// Parameters used for the benchmark datasets: blobs std 1.40, moons noise 0.075,
    /// circles noise 0.1 with factor 0.2.
    static DatasetSpec standard(DatasetKind kind, Seed seed = 0);
};

/// Throws ConfigError if the spec is inconsistent.
void validate(const DatasetSpec& spec);

/// Synthetic blobs / circles / moons; deterministic for a fixed seed.
LabeledDataset generate(const DatasetSpec& spec);

/// Loads a headered CSV; every column except `label_column` must be numeric.
/// Labels are re-indexed densely by first appearance.
LabeledDataset load_csv(const std::string& path, const std::string& label_column);

/// Per-feature min-max scaling onto [0, π]; constant features map to 0.
LabeledDataset scale_to_pi(const LabeledDataset& ds);

/// Downsamples every class (without replacement) to the minority-class count.
/// Selected rows keep their original relative order.
LabeledDataset balance_by_class(const LabeledDataset& ds, Seed seed);

/// Random subset of `n` rows (without replacement, original order kept). n ≥ ds.n() is a no-op.
LabeledDataset subsample(const LabeledDataset& ds, Eigen::Index n, Seed seed);

/// Writes columns f0..f{d-1},label.
void write_csv(const LabeledDataset& ds, const std::string& path);

}  // namespace qsc

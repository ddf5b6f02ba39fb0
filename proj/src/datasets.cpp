#include "qsc/datasets.hpp"

#include "qsc/csv.hpp"
#include "qsc/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <unordered_map>

namespace qsc {

std::vector<int> LabeledDataset::class_counts() const {
    std::vector<int> counts(static_cast<std::size_t>(std::max(n_classes, 0)), 0);
    for (int y : labels) ++counts[static_cast<std::size_t>(y)];
    return counts;
}

std::string_view to_string(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::blobs: return "blobs";
        case DatasetKind::circles: return "circles";
        case DatasetKind::moons: return "moons";
        case DatasetKind::csv: return "csv";
    }
    return "unknown";
}

DatasetKind dataset_kind_from_string(std::string_view name) {
    if (name == "blobs") return DatasetKind::blobs;
    if (name == "circles") return DatasetKind::circles;
    if (name == "moons") return DatasetKind::moons;
    if (name == "csv") return DatasetKind::csv;
    throw ConfigError("unknown dataset kind '" + std::string(name) + "'");
}

DatasetSpec DatasetSpec::standard(DatasetKind kind, Seed seed) {
    DatasetSpec spec;
    spec.kind = kind;
    spec.seed = seed;
    switch (kind) {
        case DatasetKind::blobs: spec.cluster_std = 1.40; break;
        case DatasetKind::circles:
            spec.noise = 0.1;
            spec.factor = 0.2;
            break;
        case DatasetKind::moons: spec.noise = 0.075; break;
        case DatasetKind::csv: break;
    }
    return spec;
}

void validate(const DatasetSpec& spec) {
    if (spec.kind == DatasetKind::csv) {
        if (spec.csv_path.empty()) throw ConfigError("csv dataset requires a path");
        if (spec.label_column.empty()) throw ConfigError("csv dataset requires a label column");
        return;
    }
    if (spec.n_samples <= 0) throw ConfigError("n_samples must be positive");
    if (spec.kind == DatasetKind::blobs) {
        if (spec.n_centers < 1) throw ConfigError("blobs need at least one centre");
        if (!(spec.cluster_std >= 0.0) || !std::isfinite(spec.cluster_std)) {
            throw ConfigError("cluster_std must be finite and non-negative");
        }
        if (!(spec.center_box > 0.0)) throw ConfigError("center_box must be positive");
        if (spec.n_samples < spec.n_centers) throw ConfigError("n_samples must be at least the number of classes");
        return;
    }
    if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) throw ConfigError("noise must be finite and non-negative");
    if (spec.n_samples < 2) throw ConfigError("n_samples must be at least the number of classes (2)");
    if (spec.kind == DatasetKind::circles && !(spec.factor > 0.0 && spec.factor < 1.0)) {
        throw ConfigError("circles factor must lie in (0, 1)");
    }
}

namespace {

void shuffle_rows(LabeledDataset& ds, std::mt19937_64& rng) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(ds.n()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    Matrix features(ds.n(), ds.d());
    Labels labels(ds.labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        features.row(static_cast<Eigen::Index>(i)) = ds.features.row(order[i]);
        labels[i] = ds.labels[static_cast<std::size_t>(order[i])];
    }
    ds.features = std::move(features);
    ds.labels = std::move(labels);
}

LabeledDataset make_blobs(const DatasetSpec& spec, std::mt19937_64& rng) {
    LabeledDataset ds;
    ds.name = "blobs";
    ds.n_classes = spec.n_centers;
    std::uniform_real_distribution<double> box(-spec.center_box, spec.center_box);
    std::mt19937_64 center_rng(spec.center_seed.value_or(0));
    auto& crng = spec.center_seed ? center_rng : rng;
    Matrix centers(spec.n_centers, 2);
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
        centers(c, 0) = box(crng);
        centers(c, 1) = box(crng);
    }
    ds.features.resize(spec.n_samples, 2);
    ds.labels.resize(static_cast<std::size_t>(spec.n_samples));
    std::normal_distribution<double> gauss(0.0, 1.0);
    // n / centres per class, remainder spread over the first classes.
    Eigen::Index row = 0;
    for (int c = 0; c < spec.n_centers; ++c) {
        const int count = spec.n_samples / spec.n_centers + (c < spec.n_samples % spec.n_centers ? 1 : 0);
        for (int s = 0; s < count; ++s, ++row) {
            ds.features(row, 0) = centers(c, 0) + spec.cluster_std * gauss(rng);
            ds.features(row, 1) = centers(c, 1) + spec.cluster_std * gauss(rng);
            ds.labels[static_cast<std::size_t>(row)] = c;
        }
    }
    return ds;
}

LabeledDataset make_circles(const DatasetSpec& spec, std::mt19937_64& rng) {
    LabeledDataset ds;
    ds.name = "circles";
    ds.n_classes = 2;
    const int n_outer = spec.n_samples / 2;
    const int n_inner = spec.n_samples - n_outer;
    ds.features.resize(spec.n_samples, 2);
    ds.labels.resize(static_cast<std::size_t>(spec.n_samples));
    Eigen::Index row = 0;
    auto ring = [&](int count, double radius, int label) {
        for (int s = 0; s < count; ++s, ++row) {
            const double t = 2.0 * std::numbers::pi * s / count;
            ds.features(row, 0) = radius * std::cos(t);
            ds.features(row, 1) = radius * std::sin(t);
            ds.labels[static_cast<std::size_t>(row)] = label;
        }
    };
    ring(n_outer, 1.0, 0);
    ring(n_inner, spec.factor, 1);
    if (spec.noise > 0.0) {
        std::normal_distribution<double> gauss(0.0, spec.noise);
        for (Eigen::Index i = 0; i < ds.features.size(); ++i) ds.features.data()[i] += gauss(rng);
    }
    return ds;
}

LabeledDataset make_moons(const DatasetSpec& spec, std::mt19937_64& rng) {
    LabeledDataset ds;
    ds.name = "moons";
    ds.n_classes = 2;
    const int n_outer = spec.n_samples / 2;
    const int n_inner = spec.n_samples - n_outer;
    ds.features.resize(spec.n_samples, 2);
    ds.labels.resize(static_cast<std::size_t>(spec.n_samples));
    auto step = [](int count) { return count > 1 ? std::numbers::pi / (count - 1) : 0.0; };
    Eigen::Index row = 0;
    for (int s = 0; s < n_outer; ++s, ++row) {
        const double t = s * step(n_outer);
        ds.features(row, 0) = std::cos(t);
        ds.features(row, 1) = std::sin(t);
        ds.labels[static_cast<std::size_t>(row)] = 0;
    }
    for (int s = 0; s < n_inner; ++s, ++row) {
        const double t = s * step(n_inner);
        ds.features(row, 0) = 1.0 - std::cos(t);
        ds.features(row, 1) = 1.0 - std::sin(t) - 0.5;
        ds.labels[static_cast<std::size_t>(row)] = 1;
    }
    if (spec.noise > 0.0) {
        std::normal_distribution<double> gauss(0.0, spec.noise);
        for (Eigen::Index i = 0; i < ds.features.size(); ++i) ds.features.data()[i] += gauss(rng);
    }
    return ds;
}

}  // namespace

LabeledDataset generate(const DatasetSpec& spec) {
    validate(spec);
    if (spec.kind == DatasetKind::csv) return load_csv(spec.csv_path, spec.label_column);
    std::mt19937_64 rng(spec.seed);
    LabeledDataset ds;
    switch (spec.kind) {
        case DatasetKind::blobs: ds = make_blobs(spec, rng); break;
        case DatasetKind::circles: ds = make_circles(spec, rng); break;
        case DatasetKind::moons: ds = make_moons(spec, rng); break;
        case DatasetKind::csv: break;
    }
    shuffle_rows(ds, rng);
    for (int c = 0; c < ds.n_classes; ++c) ds.class_names.push_back(std::to_string(c));
    return ds;
}

LabeledDataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": missing header row");
    const auto header = csv::split_line(line);
    std::size_t label_idx = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == label_column) label_idx = c;
    }
    if (label_idx == header.size()) throw ParseError(path + ": no label column named '" + label_column + "'");

    std::vector<std::vector<double>> rows;
    LabeledDataset ds;
    std::unordered_map<std::string, int> class_index;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = csv::split_line(line);
        if (fields.size() != header.size()) {
            throw ParseError(path + ": row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                             " cells, header has " + std::to_string(header.size()));
        }
        std::vector<double> values;
        values.reserve(header.size() - 1);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const std::string& cell = fields[c];
            if (cell.empty()) {
                throw ParseError(path + ": row " + std::to_string(row) + ", column '" + header[c] + "': missing value");
            }
            if (c == label_idx) continue;
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw ParseError(path + ": row " + std::to_string(row) + ", column '" + header[c] +
                                 "': non-numeric value '" + cell + "'");
            }
            if (!std::isfinite(v)) {
                throw ParseError(path + ": row " + std::to_string(row) + ", column '" + header[c] + "': NaN or infinite");
            }
            values.push_back(v);
        }
        const std::string& label = fields[label_idx];
        auto [it, inserted] = class_index.try_emplace(label, static_cast<int>(class_index.size()));
        if (inserted) ds.class_names.push_back(label);
        ds.labels.push_back(it->second);
        rows.push_back(std::move(values));
    }
    ds.n_classes = static_cast<int>(class_index.size());
    ds.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(header.size() - 1));
    for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
        for (Eigen::Index j = 0; j < ds.features.cols(); ++j) ds.features(i, j) = rows[i][j];
    }
    const auto slash = path.find_last_of('/');
    ds.name = slash == std::string::npos ? path : path.substr(slash + 1);
    return ds;
}

LabeledDataset scale_to_pi(const LabeledDataset& ds) {
    LabeledDataset out = ds;
    for (Eigen::Index j = 0; j < ds.d(); ++j) {
        const double lo = ds.features.col(j).minCoeff();
        const double hi = ds.features.col(j).maxCoeff();
        const double range = hi - lo;
        if (range > 0.0) {
            out.features.col(j) = ((ds.features.col(j).array() - lo) / range) * std::numbers::pi;
        } else {
            out.features.col(j).setZero();
        }
    }
    return out;
}

namespace {

LabeledDataset select_rows(const LabeledDataset& ds, std::vector<Eigen::Index> rows) {
    std::sort(rows.begin(), rows.end());
    LabeledDataset out;
    out.name = ds.name;
    out.n_classes = ds.n_classes;
    out.class_names = ds.class_names;
    out.features.resize(static_cast<Eigen::Index>(rows.size()), ds.d());
    out.labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.features.row(static_cast<Eigen::Index>(i)) = ds.features.row(rows[i]);
        out.labels.push_back(ds.labels[static_cast<std::size_t>(rows[i])]);
    }
    return out;
}

}  // namespace

LabeledDataset balance_by_class(const LabeledDataset& ds, Seed seed) {
    std::vector<std::vector<Eigen::Index>> members(static_cast<std::size_t>(ds.n_classes));
    for (std::size_t i = 0; i < ds.labels.size(); ++i) {
        members[static_cast<std::size_t>(ds.labels[i])].push_back(static_cast<Eigen::Index>(i));
    }
    std::size_t min_count = ds.labels.size();
    for (const auto& m : members) {
        if (m.empty()) throw ArgumentError("balance_by_class: class without samples");
        min_count = std::min(min_count, m.size());
    }
    std::mt19937_64 rng(seed);
    std::vector<Eigen::Index> keep;
    for (auto& m : members) {
        std::shuffle(m.begin(), m.end(), rng);
        keep.insert(keep.end(), m.begin(), m.begin() + static_cast<std::ptrdiff_t>(min_count));
    }
    return select_rows(ds, std::move(keep));
}

LabeledDataset subsample(const LabeledDataset& ds, Eigen::Index n, Seed seed) {
    if (n >= ds.n()) return ds;
    std::vector<Eigen::Index> all(static_cast<std::size_t>(ds.n()));
    std::iota(all.begin(), all.end(), Eigen::Index{0});
    std::mt19937_64 rng(seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(n));
    return select_rows(ds, std::move(all));
}

void write_csv(const LabeledDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write " + path);
    for (Eigen::Index j = 0; j < ds.d(); ++j) out << 'f' << j << ',';
    out << "label\n";
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index j = 0; j < ds.d(); ++j) out << csv::format_double(ds.features(i, j)) << ',';
        out << ds.labels[static_cast<std::size_t>(i)] << '\n';
    }
}

}  // namespace qsc

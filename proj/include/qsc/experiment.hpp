#pragma once

// End-to-end runs: dataset → kernel → spectral clustering → metrics, repeated
// over seeds and aggregated.

#include "qsc/datasets.hpp"
#include "qsc/io.hpp"
#include "qsc/metrics.hpp"
#include "qsc/neuromorphic.hpp"
#include "qsc/parallel.hpp"
#include "qsc/pqk.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsc::experiment {

enum class KernelChoice { pqk, rbf, lif_vp, lif_vr, qlif_vp, qlif_vr };

std::string_view to_string(KernelChoice k);
KernelChoice kernel_choice_from_string(std::string_view name);

struct ExperimentConfig {
    DatasetSpec dataset = DatasetSpec::standard(DatasetKind::blobs);
    bool balance = false;  // csv only: balanced resample per repetition
    int subsample = 0;     // csv only: random subset of this many rows per repetition (0 keeps all)
    bool fixed_centers = true;  // blobs: one centre layout per run (from base_seed), fresh noise per repetition

    KernelChoice kernel = KernelChoice::rbf;
    double rbf_gamma = 10.0;
    int pqk_budget = 200;
    neuro::NeuromorphicConfig neuro;  // neuron and metric are taken from `kernel`

    int k = 0;               // 0 → number of classes in the dataset
    std::vector<int> k_range = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    int repetitions = 10;
    Seed base_seed = 0;
    int kmeans_restarts = 10;
    int kmeans_max_iter = 300;
    bool drop_trivial = false;
    metrics::SilhouetteSpace silhouette_space = metrics::SilhouetteSpace::feature;
    metrics::Averaging averaging = metrics::Averaging::macro;
    std::string output_dir;
};

/// Throws ConfigError on invalid settings.
void validate(const ExperimentConfig& cfg);

io::json config_to_json(const ExperimentConfig& cfg);
/// Missing keys keep their defaults.
ExperimentConfig config_from_json(const io::json& j);
std::string config_hash(const ExperimentConfig& cfg);

/// Seed streams derived from a repetition seed.
struct RepetitionSeeds {
    Seed dataset;
    Seed search;
    Seed kmeans;
    Seed resample;
    // blob centres come from mix_seed(base_seed, 4) when fixed_centers is set

    static RepetitionSeeds from(Seed rep_seed);
};

/// Scaled working set for one repetition. `loaded` supplies the CSV contents for csv specs.
LabeledDataset prepare_dataset(const ExperimentConfig& cfg, const LabeledDataset* loaded, Seed rep_seed);

struct KernelBuild {
    KernelMatrix kernel;
    std::optional<pqk::SearchResult> search;
    std::optional<neuro::NeuromorphicKernel> spiking;
};

KernelBuild build_kernel(const LabeledDataset& scaled, const ExperimentConfig& cfg, Seed rep_seed,
                         Exec exec = Exec::parallel);

struct RepetitionResult {
    int index = 0;
    Seed seed = 0;
    bool ok = false;
    std::string error;
    int k = 0;
    bool degenerate = false;
    metrics::MetricsReport metrics;
    double pqk_kta = 0.0;
};

struct Aggregate {
    metrics::MetricsReport mean;
    metrics::MetricsReport std;  // sample (n−1) convention; 0 for a single run
    int successful = 0;
};

Aggregate aggregate(const std::vector<metrics::MetricsReport>& runs);

struct ExperimentReport {
    ExperimentConfig config;
    std::string dataset_name;
    int k = 0;
    std::vector<RepetitionResult> repetitions;
    Aggregate summary;
    bool partial = false;
    bool single_run = false;
    double wall_seconds = 0.0;
};

ExperimentReport run(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

struct SweepReport {
    ExperimentConfig config;
    std::string dataset_name;
    std::vector<metrics::KSweep> per_repetition;  // empty curves for failed repetitions
    std::vector<std::string> errors;              // one per repetition, empty when it succeeded
    metrics::KSweep mean_curve;
    std::vector<ExperimentReport> per_k;          // one aggregated report per k
    double wall_seconds = 0.0;
};

SweepReport sweep(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

inline constexpr const char* kMetricNames[] = {"accuracy", "precision", "recall", "silhouette", "ari", "v_measure"};

double metric_value(const metrics::MetricsReport& m, std::string_view name);

struct ComparisonRow {
    std::string label;
    Aggregate summary;
    std::vector<bool> best;  // parallel to kMetricNames
};

struct ComparisonTable {
    std::string dataset_name;
    std::vector<ComparisonRow> rows;
};

/// Rows from existing reports; every report must share one dataset configuration.
ComparisonTable compare(const std::vector<ExperimentReport>& reports);
/// Runs each config then compares.
ComparisonTable compare(const std::vector<ExperimentConfig>& configs, Exec exec = Exec::parallel);

io::json report_to_json(const ExperimentReport& r);
io::json sweep_to_json(const SweepReport& s);
io::json comparison_to_json(const ComparisonTable& t);

/// report.json plus reps.csv (dataset,kernel,k,seed,<scores>).
void write_report(const ExperimentReport& r, const std::string& dir);
/// sweep.json, sweep_curve.csv (mean curve) and sweep_reps.csv.
void write_sweep(const SweepReport& s, const std::string& dir);
/// comparison.json and comparison.csv; best means carry a '*' suffix in the CSV.
void write_comparison(const ComparisonTable& t, const std::string& dir);

}  // namespace qsc::experiment

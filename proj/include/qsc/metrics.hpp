#pragma once

#include "qsc/spectral.hpp"
#include "qsc/types.hpp"

#include <vector>

namespace qsc::metrics {

enum class Averaging { macro, weighted };
enum class SilhouetteSpace { feature, embedding };

struct ClassificationScores {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

struct VMeasure {
    double v = 0.0;
    double homogeneity = 0.0;
    double completeness = 0.0;
};

struct MetricsReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double silhouette = 0.0;
    double ari = 0.0;
    double v_measure = 0.0;
    double homogeneity = 0.0;
    double completeness = 0.0;
};

/// Each cluster takes the most frequent true class among its members (ties → smallest class).
Labels majority_map(const Labels& clusters, const Labels& truth);

/// Accuracy plus one-vs-rest precision/recall averaged over the classes present in
/// either labelling. A class never predicted contributes precision 0.
ClassificationScores classification_scores(const Labels& pred, const Labels& truth,
                                           Averaging avg = Averaging::macro);

/// Mean of (b − a)/max(a, b) with Euclidean distances between rows of `points`.
/// Singleton clusters score 0; a = b = 0 scores 0. Throws UndefinedMetricError
/// unless 2 ≤ #clusters.
double silhouette(const Matrix& points, const Labels& labels);

/// Adjusted Rand index from the contingency table.
double ari(const Labels& a, const Labels& b);

/// Homogeneity, completeness and their harmonic mean (natural-log entropies).
VMeasure v_measure(const Labels& truth, const Labels& pred);

/// Majority-mapped classification scores plus clustering scores for one run.
MetricsReport evaluate(const Labels& clusters, const Labels& truth, const Matrix& silhouette_points,
                       Averaging avg = Averaging::macro);

/// Score curves over a range of cluster counts; argmax ties go to the smallest k.
struct KSweep {
    std::vector<int> k_values;
    std::vector<double> silhouette;
    std::vector<double> ari;
    std::vector<double> v_measure;
    int argmax_silhouette = 0;
    int argmax_ari = 0;
    int argmax_v_measure = 0;
    bool flat = false;  // every curve constant: the kernel carries no cluster structure
    std::vector<int> degenerate_k;  // k values cut inside a repeated eigenvalue
};

/// Smallest k attaining the maximum of `values`.
int argmax_k(const std::vector<int>& k_values, const std::vector<double>& values);

/// Fills the argmax fields and the flat flag from the curves.
void finalize(KSweep& sweep);

struct SweepConfig {
    std::vector<int> k_values;
    spectral::SpectralConfig spectral;  // k is overwritten per sweep point
    SilhouetteSpace silhouette_space = SilhouetteSpace::feature;
};

/// Clusters K for every k (one eigendecomposition) and scores each partition.
KSweep k_sweep(const Matrix& K, const Matrix& X, const Labels& truth, const SweepConfig& cfg,
               Exec exec = Exec::parallel);

}  // namespace qsc::metrics

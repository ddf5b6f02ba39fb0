#pragma once

#include "qsc/parallel.hpp"
#include "qsc/types.hpp"

namespace qsc::spectral {

struct SpectralConfig {
    int k = 2;
    int kmeans_restarts = 10;
    int kmeans_max_iter = 300;
    Seed seed = 0;
    bool drop_trivial = false;  // skip the eigenvector of the smallest eigenvalue
};

struct ClusterAssignment {
    Labels labels;
    Matrix embedding;    // n × k, rows normalised
    Vector eigenvalues;  // the k eigenvalues whose eigenvectors form the embedding
    bool degenerate = false;  // no gap between the last kept and first dropped eigenvalue
};

/// K_ij = exp(−γ‖x_i − x_j‖²).
KernelMatrix rbf_kernel(const Matrix& X, double gamma_rbf, Exec exec = Exec::parallel);

/// L_sym = I − D^{−1/2} K D^{−1/2}. Throws DegenerateGraphError on a zero-degree row.
Matrix laplacian_sym(const Matrix& K);

/// Full eigendecomposition of a symmetric matrix, eigenvalues ascending.
/// Each eigenvector's first component above 1e−12 in magnitude is made positive.
struct Spectrum {
    Vector eigenvalues;
    Matrix eigenvectors;  // columns
};

Spectrum symmetric_eigen(const Matrix& A);

/// Columns j0..j0+k−1 of the spectrum (j0 = 1 when dropping the trivial vector),
/// rows normalised to unit length (zero rows stay zero).
Matrix embedding_from_spectrum(const Spectrum& s, int k, bool drop_trivial = false);

/// Eigenvectors of L_sym for the k smallest eigenvalues, row-normalised.
Matrix spectral_embed(const Matrix& K, int k, bool drop_trivial = false);

struct KMeansConfig {
    int restarts = 10;
    int max_iter = 300;
    Seed seed = 0;
};

struct KMeansResult {
    Labels labels;
    Matrix centroids;
    double wcss = 0.0;
    int iterations = 0;
};

/// One Lloyd run from k-means++ seeding. An emptied cluster receives the point
/// farthest from its centroid.
KMeansResult kmeans_single(const Matrix& points, int k, Seed seed, int max_iter);

/// Best of `restarts` seeded runs by within-cluster sum of squares (ties → lowest restart).
KMeansResult kmeans(const Matrix& points, int k, const KMeansConfig& cfg, Exec exec = Exec::parallel);

/// Decomposes L_sym once so several k can be clustered from the same spectrum.
class SpectralModel {
  public:
    explicit SpectralModel(const Matrix& K);

    const Spectrum& spectrum() const { return spectrum_; }
    Eigen::Index size() const { return spectrum_.eigenvalues.size(); }

    ClusterAssignment cluster(const SpectralConfig& cfg, Exec exec = Exec::parallel) const;

  private:
    Spectrum spectrum_;
};

/// laplacian_sym → spectral_embed → kmeans.
ClusterAssignment spectral_cluster(const Matrix& K, const SpectralConfig& cfg, Exec exec = Exec::parallel);

}  // namespace qsc::spectral

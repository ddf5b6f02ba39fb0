#include "qsc/spectral.hpp"

#include "qsc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace qsc::spectral {

KernelMatrix rbf_kernel(const Matrix& X, double gamma_rbf, Exec exec) {
    if (!(gamma_rbf >= 0.0)) throw ArgumentError("rbf_kernel: gamma must be non-negative");
    auto entry = [&](Eigen::Index i, Eigen::Index j) {
        return std::exp(-gamma_rbf * (X.row(i) - X.row(j)).squaredNorm());
    };
    return {symmetric_fill(X.rows(), entry, exec, 1.0), KernelKind::rbf};
}

Matrix laplacian_sym(const Matrix& K) {
    const Eigen::Index n = K.rows();
    if (K.cols() != n) throw ArgumentError("laplacian_sym: kernel is not square");
    if ((K.array() < 0.0).any()) throw ArgumentError("laplacian_sym: kernel has negative entries");
    Vector inv_sqrt_deg(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double deg = K.row(i).sum();
        if (!(deg > 0.0)) throw DegenerateGraphError(static_cast<std::size_t>(i));
        inv_sqrt_deg[i] = 1.0 / std::sqrt(deg);
    }
    Matrix L(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            L(i, j) = (i == j ? 1.0 : 0.0) - K(i, j) * (inv_sqrt_deg[i] * inv_sqrt_deg[j]);
        }
    }
    return L;
}

Spectrum symmetric_eigen(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(A);
    if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");
    Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index c = 0; c < s.eigenvectors.cols(); ++c) {
        for (Eigen::Index r = 0; r < s.eigenvectors.rows(); ++r) {
            const double v = s.eigenvectors(r, c);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) s.eigenvectors.col(c) *= -1.0;
                break;
            }
        }
    }
    return s;
}

Matrix embedding_from_spectrum(const Spectrum& s, int k, bool drop_trivial) {
    const Eigen::Index first = drop_trivial ? 1 : 0;
    if (k < 1 || first + k > s.eigenvectors.cols()) {
        throw ArgumentError("spectral_embed: k=" + std::to_string(k) + " exceeds the number of available eigenvectors");
    }
    Matrix U = s.eigenvectors.middleCols(first, k);
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
        const double norm = U.row(i).norm();
        if (norm > 0.0) U.row(i) /= norm;
    }
    return U;
}

Matrix spectral_embed(const Matrix& K, int k, bool drop_trivial) {
    return embedding_from_spectrum(symmetric_eigen(laplacian_sym(K)), k, drop_trivial);
}

namespace {

Eigen::Index nearest(const Matrix& centroids, const Matrix& points, Eigen::Index i, double& best_sq) {
    Eigen::Index best = 0;
    best_sq = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
        const double d = (points.row(i) - centroids.row(c)).squaredNorm();
        if (d < best_sq) {
            best_sq = d;
            best = c;
        }
    }
    return best;
}

Matrix kmeanspp_seed(const Matrix& points, int k, std::mt19937_64& rng) {
    const Eigen::Index n = points.rows();
    Matrix centroids(k, points.cols());
    std::vector<bool> chosen(static_cast<std::size_t>(n), false);
    std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
    Eigen::Index pick = first(rng);
    centroids.row(0) = points.row(pick);
    chosen[static_cast<std::size_t>(pick)] = true;

    Vector dist_sq(n);
    for (Eigen::Index i = 0; i < n; ++i) dist_sq[i] = (points.row(i) - centroids.row(0)).squaredNorm();

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 1; c < k; ++c) {
        const double total = dist_sq.sum();
        if (total > 0.0) {
            const double target = unit(rng) * total;
            double acc = 0.0;
            pick = -1;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (dist_sq[i] <= 0.0) continue;
                acc += dist_sq[i];
                pick = i;
                if (acc >= target) break;
            }
        } else {
            // Every point coincides with a centroid: take an unused index at random.
            std::vector<Eigen::Index> unused;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (!chosen[static_cast<std::size_t>(i)]) unused.push_back(i);
            }
            std::uniform_int_distribution<std::size_t> any(0, unused.size() - 1);
            pick = unused[any(rng)];
        }
        chosen[static_cast<std::size_t>(pick)] = true;
        centroids.row(c) = points.row(pick);
        for (Eigen::Index i = 0; i < n; ++i) {
            dist_sq[i] = std::min(dist_sq[i], (points.row(i) - centroids.row(c)).squaredNorm());
        }
    }
    return centroids;
}

}  // namespace

KMeansResult kmeans_single(const Matrix& points, int k, Seed seed, int max_iter) {
    const Eigen::Index n = points.rows();
    if (k < 1 || k > n) throw ArgumentError("kmeans: need 1 <= k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    std::mt19937_64 rng(seed);
    KMeansResult r;
    r.centroids = kmeanspp_seed(points, k, rng);
    r.labels.assign(static_cast<std::size_t>(n), -1);
    Vector dist_sq(n);
    std::vector<int> counts(static_cast<std::size_t>(k));

    for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            const int c = static_cast<int>(nearest(r.centroids, points, i, dist_sq[i]));
            if (c != r.labels[static_cast<std::size_t>(i)]) {
                r.labels[static_cast<std::size_t>(i)] = c;
                changed = true;
            }
        }
        std::fill(counts.begin(), counts.end(), 0);
        for (int c : r.labels) ++counts[static_cast<std::size_t>(c)];
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            Eigen::Index far = -1;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (counts[static_cast<std::size_t>(r.labels[static_cast<std::size_t>(i)])] < 2) continue;
                if (far < 0 || dist_sq[i] > dist_sq[far]) far = i;
            }
            --counts[static_cast<std::size_t>(r.labels[static_cast<std::size_t>(far)])];
            r.labels[static_cast<std::size_t>(far)] = c;
            counts[static_cast<std::size_t>(c)] = 1;
            dist_sq[far] = 0.0;
            changed = true;
        }
        if (!changed && r.iterations > 0) break;
        r.centroids.setZero();
        for (Eigen::Index i = 0; i < n; ++i) r.centroids.row(r.labels[static_cast<std::size_t>(i)]) += points.row(i);
        for (int c = 0; c < k; ++c) r.centroids.row(c) /= counts[static_cast<std::size_t>(c)];
    }
    r.wcss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        r.wcss += (points.row(i) - r.centroids.row(r.labels[static_cast<std::size_t>(i)])).squaredNorm();
    }
    return r;
}

KMeansResult kmeans(const Matrix& points, int k, const KMeansConfig& cfg, Exec exec) {
    if (cfg.restarts < 1) throw ArgumentError("kmeans: restarts must be at least 1");
    if (k < 1 || k > points.rows()) {
        throw ArgumentError("kmeans: need 1 <= k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(points.rows()) + ")");
    }
    std::vector<KMeansResult> runs(static_cast<std::size_t>(cfg.restarts));
    for_each_index(
        cfg.restarts,
        [&](Eigen::Index r) {
            runs[static_cast<std::size_t>(r)] =
                kmeans_single(points, k, mix_seed(cfg.seed, static_cast<Seed>(r)), cfg.max_iter);
        },
        exec);
    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        if (runs[r].wcss < runs[best].wcss) best = r;
    }
    return std::move(runs[best]);
}

SpectralModel::SpectralModel(const Matrix& K) : spectrum_(symmetric_eigen(laplacian_sym(K))) {}

ClusterAssignment SpectralModel::cluster(const SpectralConfig& cfg, Exec exec) const {
    ClusterAssignment out;
    out.embedding = embedding_from_spectrum(spectrum_, cfg.k, cfg.drop_trivial);
    const Eigen::Index first = cfg.drop_trivial ? 1 : 0;
    out.eigenvalues = spectrum_.eigenvalues.segment(first, cfg.k);
    const Eigen::Index next = first + cfg.k;
    if (next < size()) {
        out.degenerate = std::abs(spectrum_.eigenvalues[next] - spectrum_.eigenvalues[next - 1]) < 1e-10;
    }
    out.labels = kmeans(out.embedding, cfg.k, {cfg.kmeans_restarts, cfg.kmeans_max_iter, cfg.seed}, exec).labels;
    return out;
}

ClusterAssignment spectral_cluster(const Matrix& K, const SpectralConfig& cfg, Exec exec) {
    return SpectralModel(K).cluster(cfg, exec);
}

}  // namespace qsc::spectral

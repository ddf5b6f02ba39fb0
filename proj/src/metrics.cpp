#include "qsc/metrics.hpp"

#include "qsc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace qsc::metrics {

namespace {

void check_lengths(const Labels& a, const Labels& b, const char* what) {
    if (a.size() != b.size()) throw ArgumentError(std::string(what) + ": label vectors differ in length");
}

// Maps arbitrary label values onto 0..m-1 in ascending value order.
Labels densify(const Labels& labels, int& count) {
    std::map<int, int> index;
    for (int y : labels) index.emplace(y, 0);
    int next = 0;
    for (auto& [value, idx] : index) idx = next++;
    count = next;
    Labels out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[i] = index[labels[i]];
    return out;
}

struct Contingency {
    std::vector<std::vector<double>> table;  // rows: a, cols: b
    std::vector<double> row_sums;
    std::vector<double> col_sums;
    double n = 0.0;
};

Contingency contingency(const Labels& a, const Labels& b) {
    int ra = 0;
    int rb = 0;
    const Labels da = densify(a, ra);
    const Labels db = densify(b, rb);
    Contingency c;
    c.table.assign(static_cast<std::size_t>(ra), std::vector<double>(static_cast<std::size_t>(rb), 0.0));
    c.row_sums.assign(static_cast<std::size_t>(ra), 0.0);
    c.col_sums.assign(static_cast<std::size_t>(rb), 0.0);
    for (std::size_t i = 0; i < da.size(); ++i) {
        c.table[static_cast<std::size_t>(da[i])][static_cast<std::size_t>(db[i])] += 1.0;
        c.row_sums[static_cast<std::size_t>(da[i])] += 1.0;
        c.col_sums[static_cast<std::size_t>(db[i])] += 1.0;
    }
    c.n = static_cast<double>(a.size());
    return c;
}

double comb2(double x) { return x * (x - 1.0) / 2.0; }

double entropy(const std::vector<double>& counts, double n) {
    double h = 0.0;
    for (double c : counts) {
        if (c > 0.0) h -= (c / n) * std::log(c / n);
    }
    return h;
}

double silhouette_from_distances(const Matrix& dist, const Labels& labels) {
    int k = 0;
    const Labels dense = densify(labels, k);
    if (k < 2) throw UndefinedMetricError("silhouette: requires at least two clusters");
    const Eigen::Index n = dist.rows();
    std::vector<double> sizes(static_cast<std::size_t>(k), 0.0);
    for (int c : dense) sizes[static_cast<std::size_t>(c)] += 1.0;

    double total = 0.0;
    std::vector<double> sums(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(dense[static_cast<std::size_t>(i)]);
        if (sizes[own] < 2.0) continue;  // singleton scores 0
        std::fill(sums.begin(), sums.end(), 0.0);
        for (Eigen::Index j = 0; j < n; ++j) sums[static_cast<std::size_t>(dense[static_cast<std::size_t>(j)])] += dist(i, j);
        const double a = sums[own] / (sizes[own] - 1.0);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < sums.size(); ++c) {
            if (c != own) b = std::min(b, sums[c] / sizes[c]);
        }
        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

Matrix euclidean_distances(const Matrix& points) {
    return symmetric_fill(
        points.rows(), [&](Eigen::Index i, Eigen::Index j) { return (points.row(i) - points.row(j)).norm(); },
        Exec::parallel, 0.0);
}

}  // namespace

Labels majority_map(const Labels& clusters, const Labels& truth) {
    check_lengths(clusters, truth, "majority_map");
    std::map<int, std::map<int, int>> votes;
    for (std::size_t i = 0; i < clusters.size(); ++i) ++votes[clusters[i]][truth[i]];
    std::map<int, int> winner;
    for (const auto& [cluster, counts] : votes) {
        int best_class = 0;
        int best_count = -1;
        for (const auto& [cls, count] : counts) {  // ascending class → first max wins ties
            if (count > best_count) {
                best_count = count;
                best_class = cls;
            }
        }
        winner[cluster] = best_class;
    }
    Labels out(clusters.size());
    for (std::size_t i = 0; i < clusters.size(); ++i) out[i] = winner[clusters[i]];
    return out;
}

ClassificationScores classification_scores(const Labels& pred, const Labels& truth, Averaging avg) {
    check_lengths(pred, truth, "classification_scores");
    if (truth.empty()) throw ArgumentError("classification_scores: empty input");
    std::set<int> classes(truth.begin(), truth.end());
    classes.insert(pred.begin(), pred.end());

    ClassificationScores s;
    double correct = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) correct += pred[i] == truth[i] ? 1.0 : 0.0;
    const double n = static_cast<double>(truth.size());
    s.accuracy = correct / n;

    double weight_total = 0.0;
    for (int c : classes) {
        double tp = 0.0, fp = 0.0, fn = 0.0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            const bool p = pred[i] == c;
            const bool t = truth[i] == c;
            tp += p && t;
            fp += p && !t;
            fn += !p && t;
        }
        const double precision = tp + fp > 0.0 ? tp / (tp + fp) : 0.0;
        const double recall = tp + fn > 0.0 ? tp / (tp + fn) : 0.0;
        const double w = avg == Averaging::macro ? 1.0 : tp + fn;
        s.precision += w * precision;
        s.recall += w * recall;
        weight_total += w;
    }
    s.precision /= weight_total;
    s.recall /= weight_total;
    return s;
}

double silhouette(const Matrix& points, const Labels& labels) {
    if (static_cast<Eigen::Index>(labels.size()) != points.rows()) {
        throw ArgumentError("silhouette: label count differs from number of points");
    }
    return silhouette_from_distances(euclidean_distances(points), labels);
}

double ari(const Labels& a, const Labels& b) {
    check_lengths(a, b, "ari");
    if (a.size() < 2) throw ArgumentError("ari: need at least two samples");
    const Contingency c = contingency(a, b);
    double index = 0.0;
    for (const auto& row : c.table) {
        for (double v : row) index += comb2(v);
    }
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (double v : c.row_sums) sum_a += comb2(v);
    for (double v : c.col_sums) sum_b += comb2(v);
    const double expected = sum_a * sum_b / comb2(c.n);
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0;  // both trivial partitions: perfect agreement
    return (index - expected) / (max_index - expected);
}

VMeasure v_measure(const Labels& truth, const Labels& pred) {
    check_lengths(truth, pred, "v_measure");
    if (truth.empty()) throw ArgumentError("v_measure: empty input");
    const Contingency c = contingency(truth, pred);  // rows: classes C, cols: clusters K
    const double h_c = entropy(c.row_sums, c.n);
    const double h_k = entropy(c.col_sums, c.n);
    double h_c_given_k = 0.0;
    double h_k_given_c = 0.0;
    for (std::size_t i = 0; i < c.table.size(); ++i) {
        for (std::size_t j = 0; j < c.table[i].size(); ++j) {
            const double nij = c.table[i][j];
            if (nij <= 0.0) continue;
            h_c_given_k -= (nij / c.n) * std::log(nij / c.col_sums[j]);
            h_k_given_c -= (nij / c.n) * std::log(nij / c.row_sums[i]);
        }
    }
    VMeasure v;
    v.homogeneity = h_c == 0.0 ? 1.0 : std::clamp(1.0 - h_c_given_k / h_c, 0.0, 1.0);
    v.completeness = h_k == 0.0 ? 1.0 : std::clamp(1.0 - h_k_given_c / h_k, 0.0, 1.0);
    const double sum = v.homogeneity + v.completeness;
    v.v = sum == 0.0 ? 0.0 : 2.0 * v.homogeneity * v.completeness / sum;
    return v;
}

MetricsReport evaluate(const Labels& clusters, const Labels& truth, const Matrix& silhouette_points, Averaging avg) {
    MetricsReport r;
    const auto cls = classification_scores(majority_map(clusters, truth), truth, avg);
    r.accuracy = cls.accuracy;
    r.precision = cls.precision;
    r.recall = cls.recall;
    r.silhouette = silhouette(silhouette_points, clusters);
    r.ari = ari(truth, clusters);
    const auto vm = v_measure(truth, clusters);
    r.v_measure = vm.v;
    r.homogeneity = vm.homogeneity;
    r.completeness = vm.completeness;
    return r;
}

int argmax_k(const std::vector<int>& k_values, const std::vector<double>& values) {
    if (k_values.empty() || k_values.size() != values.size()) throw ArgumentError("argmax_k: empty or ragged curve");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best] || (values[i] == values[best] && k_values[i] < k_values[best])) best = i;
    }
    return k_values[best];
}

void finalize(KSweep& sweep) {
    sweep.argmax_silhouette = argmax_k(sweep.k_values, sweep.silhouette);
    sweep.argmax_ari = argmax_k(sweep.k_values, sweep.ari);
    sweep.argmax_v_measure = argmax_k(sweep.k_values, sweep.v_measure);
    auto constant = [](const std::vector<double>& v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo < 1e-12;
    };
    sweep.flat = constant(sweep.silhouette) && constant(sweep.ari) && constant(sweep.v_measure);
}

KSweep k_sweep(const Matrix& K, const Matrix& X, const Labels& truth, const SweepConfig& cfg, Exec exec) {
    const Eigen::Index n = K.rows();
    for (int k : cfg.k_values) {
        if (k < 2 || k > n - 1) throw ArgumentError("k_sweep: k=" + std::to_string(k) + " outside [2, n-1]");
    }
    const spectral::SpectralModel model(K);
    Matrix feature_dist;
    if (cfg.silhouette_space == SilhouetteSpace::feature) feature_dist = euclidean_distances(X);

    KSweep sweep;
    sweep.k_values = cfg.k_values;
    for (int k : cfg.k_values) {
        spectral::SpectralConfig sc = cfg.spectral;
        sc.k = k;
        const auto assignment = model.cluster(sc, exec);
        if (assignment.degenerate) sweep.degenerate_k.push_back(k);
        sweep.silhouette.push_back(cfg.silhouette_space == SilhouetteSpace::feature
                                       ? silhouette_from_distances(feature_dist, assignment.labels)
                                       : silhouette(assignment.embedding, assignment.labels));
        sweep.ari.push_back(ari(truth, assignment.labels));
        sweep.v_measure.push_back(v_measure(truth, assignment.labels).v);
    }
    finalize(sweep);
    return sweep;
}

}  // namespace qsc::metrics

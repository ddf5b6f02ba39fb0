// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"

#include "qsc/datasets.hpp"
#include "qsc/experiment.hpp"
#include "qsc/metrics.hpp"
#include "qsc/neuromorphic.hpp"
#include "qsc/pqk.hpp"
#include "qsc/spectral.hpp"

#include <chrono>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

using namespace qsc;
using namespace qsc::experiment;
using std::numbers::pi;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

ExperimentConfig config(DatasetKind kind, KernelChoice kernel) {
    ExperimentConfig cfg;
    cfg.dataset = DatasetSpec::standard(kind);
    cfg.kernel = kernel;
    cfg.repetitions = 10;
    cfg.base_seed = 0;
    cfg.pqk_budget = 200;
    return cfg;
}

ExperimentConfig iris(KernelChoice kernel) {
    ExperimentConfig cfg = config(DatasetKind::csv, kernel);
    cfg.dataset.csv_path = QSC_TEST_DATA_DIR "/iris.csv";
    cfg.dataset.label_column = "species";
    return cfg;
}

double mean_acc(const ExperimentConfig& cfg) { return run(cfg).summary.mean.accuracy; }

// ---- 1-7: end-to-end runs ----

void criterion1() {
    const auto r = run(config(DatasetKind::circles, KernelChoice::rbf));
    const double acc = r.summary.mean.accuracy;
    const double ari = r.summary.mean.ari;
    report(1, acc >= 0.99 && ari >= 0.98, "RBF circles accuracy " + fmt(acc) + " (>= 0.99), ARI " + fmt(ari) + " (>= 0.98)");
}

void criterion2() {
    const double blobs = mean_acc(config(DatasetKind::blobs, KernelChoice::rbf));
    const double moons = mean_acc(config(DatasetKind::moons, KernelChoice::rbf));
    report(2, blobs >= 0.93 && blobs <= 1.0 && moons >= 0.95,
           "RBF blobs accuracy " + fmt(blobs) + " (in [0.93, 1]), moons " + fmt(moons) + " (>= 0.95)");
}

double qlif_vp_circles = 0.0;

void criterion3() {
    qlif_vp_circles = mean_acc(config(DatasetKind::circles, KernelChoice::qlif_vp));
    const double blobs = mean_acc(config(DatasetKind::blobs, KernelChoice::qlif_vp));
    report(3, qlif_vp_circles >= 0.90 && blobs >= 0.80,
           "QLIF+VP circles accuracy " + fmt(qlif_vp_circles) + " (>= 0.90), blobs " + fmt(blobs) + " (>= 0.80)");
}

void criterion4() {
    const double vr = mean_acc(config(DatasetKind::circles, KernelChoice::qlif_vr));
    const double gap = qlif_vp_circles - vr;
    report(4, gap >= 0.15,
           "QLIF+VP circles " + fmt(qlif_vp_circles) + " minus QLIF+vR " + fmt(vr) + " = " + fmt(gap) + " (>= 0.15)");
}

void criterion5() {
    const double blobs = mean_acc(config(DatasetKind::blobs, KernelChoice::pqk));
    const double moons = mean_acc(config(DatasetKind::moons, KernelChoice::pqk));
    report(5, blobs >= 0.80 && moons >= 0.65 && moons <= 0.95,
           "pQK blobs accuracy " + fmt(blobs) + " (>= 0.80), moons " + fmt(moons) + " (in [0.65, 0.95])");
}

struct SweepTally {
    int both = 0;  // runs where ARI and V-measure both peak at the target
    int ari = 0;
    int v = 0;
    int runs = 0;
    int mean_ari = 0;
    int mean_v = 0;
};

SweepTally tally(DatasetKind kind, KernelChoice kernel, int target) {
    auto cfg = config(kind, kernel);
    cfg.k_range = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    const auto s = sweep(cfg);
    SweepTally t;
    for (std::size_t r = 0; r < s.per_repetition.size(); ++r) {
        if (!s.errors[r].empty()) continue;
        const auto& c = s.per_repetition[r];
        ++t.runs;
        t.ari += c.argmax_ari == target;
        t.v += c.argmax_v_measure == target;
        t.both += c.argmax_ari == target && c.argmax_v_measure == target;
    }
    t.mean_ari = s.mean_curve.argmax_ari;
    t.mean_v = s.mean_curve.argmax_v_measure;
    return t;
}

std::string describe(const char* name, const SweepTally& t) {
    std::ostringstream o;
    o << name << " both " << t.both << "/" << t.runs << " (ARI " << t.ari << ", V " << t.v << "; mean-curve argmax ARI "
      << t.mean_ari << ", V " << t.mean_v << ")";
    return o.str();
}

void criterion6() {
    const auto bp = tally(DatasetKind::blobs, KernelChoice::pqk, 3);
    const auto bq = tally(DatasetKind::blobs, KernelChoice::qlif_vp, 3);
    const auto mp = tally(DatasetKind::moons, KernelChoice::pqk, 2);
    const bool ok = bp.both >= 8 && bq.both >= 8 && mp.both >= 8;
    report(6, ok,
           "k-sweep argmax, need >= 8/10 with ARI and V-measure at the true k: " + describe("blobs pQK", bp) + "; " +
               describe("blobs QLIF+VP", bq) + "; " + describe("moons pQK", mp));
}

void criterion7() {
    const auto r = run(iris(KernelChoice::qlif_vp));
    const double acc = r.summary.mean.accuracy;
    report(7, acc >= 0.82 && acc <= 0.95, "Iris QLIF+VP accuracy " + fmt(acc) + " (in [0.82, 0.95])");
}

// ---- 8-14: properties ----

void criterion8() {
    oracle::Gen g(8);
    int bad = 0;
    std::string first;
    const KernelChoice kernels[] = {KernelChoice::pqk,    KernelChoice::rbf,     KernelChoice::lif_vp,
                                    KernelChoice::lif_vr, KernelChoice::qlif_vp, KernelChoice::qlif_vr};
    const DatasetKind kinds[] = {DatasetKind::blobs, DatasetKind::circles, DatasetKind::moons};
    for (int t = 0; t < 100; ++t) {
        ExperimentConfig cfg;
        cfg.dataset = DatasetSpec::standard(kinds[g.integer(0, 2)], static_cast<Seed>(g.integer(0, 1000)));
        cfg.dataset.n_samples = g.integer(10, 40);
        cfg.dataset.noise = g.uniform(0.0, 0.2);
        cfg.dataset.cluster_std = g.uniform(0.0, 3.0);
        cfg.kernel = kernels[g.integer(0, 5)];
        cfg.rbf_gamma = std::exp(g.uniform(-3, 4));
        cfg.pqk_budget = g.integer(1, 8);
        cfg.neuro.max_rate = g.integer(1, 60);
        cfg.neuro.lif.beta_decay = g.uniform(0.5, 0.99);
        cfg.neuro.lif.weight = g.uniform(0.05, 1.0);
        cfg.neuro.qlif.theta = g.uniform(0.1, pi);
        cfg.neuro.qlif.tau_delay = g.uniform(0.01, 1.0);
        cfg.neuro.metric.vp_q = g.uniform(0.0, 50.0);
        cfg.neuro.metric.vr_tau = g.uniform(0.005, 0.5);
        cfg.neuro.gamma_scale = g.coin() ? 0.0 : g.uniform(0.01, 5.0);
        const Seed seed = static_cast<Seed>(t);
        const auto ds = prepare_dataset(cfg, nullptr, seed);
        const auto k = build_kernel(ds, cfg, seed);
        const auto msg = check_kernel_invariants(k.kernel);
        if (!msg.empty()) {
            ++bad;
            if (first.empty()) first = std::string(to_string(cfg.kernel)) + ": " + msg;
        }
    }
    report(8, bad == 0, std::to_string(100 - bad) + "/100 random kernels symmetric, in [0,1], unit diagonal" +
                            (first.empty() ? "" : "; first violation " + first));
}

void criterion9() {
    oracle::Gen g(9);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const auto d = static_cast<std::size_t>(g.integer(1, 4));
        pqk::EncodingParams p;
        std::vector<double> x, y;
        for (std::size_t i = 0; i < d; ++i) {
            p.alpha.push_back(g.uniform(0, 2));
            p.beta.push_back(g.uniform(0, 2));
            p.gamma_rot.push_back(g.uniform(0, 2));
            x.push_back(g.uniform(0, pi));
            y.push_back(g.uniform(0, pi));
        }
        const Vector xv = Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(d));
        const Vector yv = Eigen::Map<const Vector>(y.data(), static_cast<Eigen::Index>(d));
        const double err = std::abs(pqk::fidelity(xv, yv, p) - oracle::statevector_fidelity(x, y, p.alpha, p.beta, p.gamma_rot));
        worst = std::max(worst, err);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |product - statevector| over 1000 pairs, d <= 4: %.2e (<= 1e-10)", worst);
    report(9, worst <= 1e-10, buf);
}

void criterion10() {
    oracle::Gen g(10);
    double worst = 0.0;
    int mismatched = 0;
    for (int t = 0; t < 100000; ++t) {
        neuro::QLIFConfig c;
        c.theta = g.uniform(1e-3, pi);
        c.t1 = 1.0;
        c.tau_delay = g.uniform(0.0, 5.0);
        const double a = g.uniform(0.0, 1.0);
        worst = std::max(worst, std::abs(neuro::qlif_step(a, 0, c) - a * std::exp(-c.tau_delay / c.t1)));
        for (int bit : {0, 1}) mismatched += neuro::qlif_step(a, bit, c) != neuro::qlif_step_unified(a, bit, c);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max decay error over 1e5 draws %.2e (<= 1e-9); case/unified mismatches %d", worst,
                  mismatched);
    report(10, worst <= 1e-9 && mismatched == 0, buf);
}

void criterion11() {
    auto train = [](std::vector<double> t) { return neuro::SpikeTrain{std::move(t), 1.0, 0.2}; };
    std::vector<std::vector<double>> all;
    for (int mask = 0; mask < 32; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) > 3) continue;
        std::vector<double> t;
        for (int b = 0; b < 5; ++b)
            if (mask & (1 << b)) t.push_back(b * 0.2);
        all.push_back(t);
    }
    int exhaustive_bad = 0;
    int asym = 0;
    int pairs = 0;
    for (double q : {0.0, 0.5, 2.0, 5.0, 20.0}) {
        for (const auto& a : all) {
            for (const auto& b : all) {
                ++pairs;
                const double d = neuro::vp_distance(train(a), train(b), q);
                exhaustive_bad += std::abs(d - oracle::vp_exhaustive(a, b, q)) > 1e-12;
                asym += d != neuro::vp_distance(train(b), train(a), q);
            }
        }
    }
    oracle::Gen g(11);
    int triangle_bad = 0;
    for (int t = 0; t < 10000; ++t) {
        const double q = g.uniform(0.0, 40.0);
        const neuro::SpikeTrain a{g.spike_times(6, 100, 0.01), 1.0, 0.01};
        const neuro::SpikeTrain b{g.spike_times(6, 100, 0.01), 1.0, 0.01};
        const neuro::SpikeTrain c{g.spike_times(6, 100, 0.01), 1.0, 0.01};
        triangle_bad += neuro::vp_distance(a, b, q) > neuro::vp_distance(a, c, q) + neuro::vp_distance(c, b, q) + 1e-12;
    }
    report(11, exhaustive_bad == 0 && asym == 0 && triangle_bad == 0,
           std::to_string(pairs) + " exhaustive pairs: " + std::to_string(exhaustive_bad) + " mismatches, " +
               std::to_string(asym) + " asymmetric; triangle violations " + std::to_string(triangle_bad) + "/10000");
}

void criterion12() {
    oracle::Gen g(12);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const double tau = g.uniform(0.01, 0.5);
        const auto a = g.spike_times(6, 100, 0.01);
        const auto b = g.spike_times(6, 100, 0.01);
        const double closed = neuro::vr_distance({a, 1.0, 0.01}, {b, 1.0, 0.01}, tau);
        worst = std::max(worst, std::abs(closed - oracle::vr_numeric(a, b, tau)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |closed form - numeric| over 1000 pairs: %.2e (<= 1e-4)", worst);
    report(12, worst <= 1e-4, buf);
}

void criterion13() {
    oracle::Gen g(13);
    double min_eig = 1.0;
    double max_res = 0.0;
    int recovered = 0;
    for (int t = 0; t < 100; ++t) {
        const int blocks = t % 2 ? 3 : 2;
        const int n = g.integer(blocks * 4, 60);
        Labels member(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) member[static_cast<std::size_t>(i)] = i % blocks;
        std::shuffle(member.begin(), member.end(), g.rng);
        Matrix K = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                if (member[static_cast<std::size_t>(i)] != member[static_cast<std::size_t>(j)]) continue;
                K(i, j) = K(j, i) = i == j ? 1.0 : g.uniform(0.1, 1.0);
            }
        }
        const Matrix L = spectral::laplacian_sym(K);
        const auto s = spectral::symmetric_eigen(L);
        min_eig = std::min(min_eig, s.eigenvalues.minCoeff());
        for (Eigen::Index c = 0; c < s.eigenvalues.size(); ++c) {
            max_res = std::max(max_res, (L * s.eigenvectors.col(c) - s.eigenvalues[c] * s.eigenvectors.col(c)).norm());
        }
        const auto a = spectral::spectral_cluster(K, {blocks, 10, 300, static_cast<Seed>(t), false});
        recovered += metrics::ari(member, a.labels) == 1.0;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "min eigenvalue %.2e (>= -1e-8), max residual %.2e (<= 1e-6), ARI = 1 on %d/100 block kernels",
                  min_eig, max_res, recovered);
    report(13, min_eig >= -1e-8 && max_res <= 1e-6 && recovered == 100, buf);
}

void criterion14() {
    int ari_bad = 0;
    int ari_pairs = 0;
    for (int n = 2; n <= 6; ++n) {
        const auto parts = oracle::set_partitions(n);
        for (const auto& a : parts) {
            for (const auto& b : parts) {
                ++ari_pairs;
                ari_bad += std::abs(metrics::ari(a, b) - oracle::ari_pairs(a, b)) > 1e-12;
            }
        }
    }
    oracle::Gen g(14);
    int major_bad = 0;
    for (int t = 0; t < 2000; ++t) {
        const int k = g.integer(1, 4);
        const int c = g.integer(1, 4);
        const auto n = static_cast<std::size_t>(g.integer(1, 20));
        const auto clusters = g.labels(n, k);
        const auto truth = g.labels(n, c);
        const double acc = metrics::classification_scores(metrics::majority_map(clusters, truth), truth).accuracy;
        major_bad += std::abs(acc - oracle::best_assignment_accuracy(clusters, truth, k, c)) > 1e-12;
    }
    double kta_worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const Matrix X = g.matrix(15, 2, 0, pi);
        const auto K = spectral::rbf_kernel(X, g.uniform(0.1, 5)).values;
        const auto y = g.labels(15, 3);
        const double scale = std::exp(g.uniform(-6, 6));
        kta_worst = std::max(kta_worst, std::abs(pqk::kta(scale * K, y) - pqk::kta(K, y)));
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "ARI vs pair counting: %d/%d mismatches (n <= 6); majority_map suboptimal %d/2000 (k <= 4); "
                  "KTA scale drift %.2e (<= 1e-10)",
                  ari_bad, ari_pairs, major_bad, kta_worst);
    report(14, ari_bad == 0 && major_bad == 0 && kta_worst <= 1e-10, buf);
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const std::pair<int, void (*)()> criteria[] = {{1, criterion1},   {2, criterion2},   {3, criterion3},
                                                   {4, criterion4},   {5, criterion5},   {6, criterion6},
                                                   {7, criterion7},   {8, criterion8},   {9, criterion9},
                                                   {10, criterion10}, {11, criterion11}, {12, criterion12},
                                                   {13, criterion13}, {14, criterion14}};
    for (const auto& [id, fn] : criteria) {
        try {
            fn();
        } catch (const std::exception& e) {
            report(id, false, std::string("exception: ") + e.what());
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/14 criteria passed in %.1f s\n", 14 - failures, secs);
    return failures == 0 ? 0 : 1;
}

#include "qsc/datasets.hpp"
#include "qsc/neuromorphic.hpp"
#include "qsc/pqk.hpp"
#include "qsc/spectral.hpp"

#include <benchmark/benchmark.h>

using namespace qsc;

namespace {

Matrix scaled_blobs(int n) {
    DatasetSpec spec = DatasetSpec::standard(DatasetKind::blobs, 1);
    spec.n_samples = n;
    return scale_to_pi(generate(spec)).features;
}

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(1) ? "parallel" : "serial"); }

void BM_pqk_gram(benchmark::State& st) {
    const Matrix X = scaled_blobs(static_cast<int>(st.range(0)));
    const auto p = pqk::EncodingParams::uniform(2, 1.0);
    for (auto _ : st) benchmark::DoNotOptimize(pqk::gram(X, p, exec_of(st)));
    label(st);
}

void BM_rbf(benchmark::State& st) {
    const Matrix X = scaled_blobs(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(spectral::rbf_kernel(X, 10.0, exec_of(st)));
    label(st);
}

void BM_spike_distances(benchmark::State& st, neuro::SpikeMetric metric) {
    const Matrix X = scaled_blobs(static_cast<int>(st.range(0)));
    neuro::NeuromorphicConfig cfg;
    cfg.metric.metric = metric;
    const auto grid = neuro::make_lattice_grid(X.cols(), neuro::default_nodes_per_dim(X.cols()));
    std::vector<std::vector<neuro::SpikeTrain>> trains;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        auto in = neuro::population_encode(X.row(i).transpose(), grid);
        for (auto& t : in) t = neuro::qlif_run(t, cfg.qlif);
        trains.push_back(std::move(in));
    }
    for (auto _ : st) benchmark::DoNotOptimize(neuro::distance_matrix(trains, cfg.metric, exec_of(st)));
    label(st);
}

void BM_neuromorphic_kernel(benchmark::State& st) {
    const Matrix X = scaled_blobs(static_cast<int>(st.range(0)));
    neuro::NeuromorphicConfig cfg;
    for (auto _ : st) benchmark::DoNotOptimize(neuro::neuromorphic_kernel(X, cfg, exec_of(st)));
    label(st);
}

void BM_kmeans(benchmark::State& st) {
    const Matrix X = scaled_blobs(static_cast<int>(st.range(0)));
    const Matrix U = spectral::spectral_embed(spectral::rbf_kernel(X, 10.0).values, 3);
    for (auto _ : st) benchmark::DoNotOptimize(spectral::kmeans(U, 3, {10, 300, 0}, exec_of(st)));
    label(st);
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int n : {100, 300}) {
        for (int par : {0, 1}) b->Args({n, par});
    }
}

}  // namespace

BENCHMARK(BM_pqk_gram)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rbf)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_spike_distances, vp, neuro::SpikeMetric::vp)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_spike_distances, vr, neuro::SpikeMetric::vr)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_neuromorphic_kernel)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kmeans)->Apply(sizes)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

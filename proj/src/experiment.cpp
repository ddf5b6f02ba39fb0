#include "qsc/experiment.hpp"

#include "qsc/csv.hpp"
#include "qsc/errors.hpp"
#include "qsc/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace qsc::experiment {

namespace {

struct KernelInfo {
    KernelChoice choice;
    const char* name;
};

constexpr KernelInfo kKernels[] = {
    {KernelChoice::pqk, "pqk"},         {KernelChoice::rbf, "rbf"},         {KernelChoice::lif_vp, "lif_vp"},
    {KernelChoice::lif_vr, "lif_vr"},   {KernelChoice::qlif_vp, "qlif_vp"}, {KernelChoice::qlif_vr, "qlif_vr"},
};

bool is_spiking(KernelChoice k) { return k != KernelChoice::pqk && k != KernelChoice::rbf; }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string_view to_string(KernelChoice k) {
    for (const auto& info : kKernels) {
        if (info.choice == k) return info.name;
    }
    return "unknown";
}

KernelChoice kernel_choice_from_string(std::string_view name) {
    for (const auto& info : kKernels) {
        if (name == info.name) return info.choice;
    }
    throw ConfigError("unknown kernel '" + std::string(name) + "' (expected pqk, rbf, lif_vp, lif_vr, qlif_vp, qlif_vr)");
}

void validate(const ExperimentConfig& cfg) {
    validate(cfg.dataset);
    if (cfg.repetitions < 1) throw ConfigError("repetitions must be at least 1");
    if (cfg.k < 0 || cfg.k == 1) throw ConfigError("k must be at least 2 (or 0 for the class count)");
    for (int k : cfg.k_range) {
        if (k < 2) throw ConfigError("k_range entries must be at least 2");
    }
    if (cfg.kmeans_restarts < 1 || cfg.kmeans_max_iter < 1) throw ConfigError("k-means restarts and iterations must be positive");
    if (cfg.subsample < 0) throw ConfigError("subsample must be non-negative");
    switch (cfg.kernel) {
        case KernelChoice::rbf:
            if (!(cfg.rbf_gamma > 0.0)) throw ConfigError("rbf gamma must be positive");
            break;
        case KernelChoice::pqk:
            if (cfg.pqk_budget < 1) throw ConfigError("pqk budget must be at least 1");
            break;
        case KernelChoice::lif_vp:
        case KernelChoice::lif_vr: neuro::validate(cfg.neuro.lif); break;
        case KernelChoice::qlif_vp:
        case KernelChoice::qlif_vr: neuro::validate(cfg.neuro.qlif); break;
    }
    if (is_spiking(cfg.kernel)) {
        const auto& n = cfg.neuro;
        if (n.nodes_per_dim == 1 || n.nodes_per_dim < 0) throw ConfigError("nodes_per_dim must be 0 (auto) or at least 2");
        if (!(n.dt > 0.0) || !(n.t_max > 0.0) || n.max_rate < 1 || n.max_rate * n.dt > n.t_max + 1e-12) {
            throw ConfigError("spike timebase requires dt, t_max > 0 and 1 <= max_rate <= t_max / dt");
        }
        if (!(n.metric.vp_q >= 0.0) || !(n.metric.vr_tau > 0.0) || !(n.metric.vp_cost > 0.0)) {
            throw ConfigError("vp_q must be >= 0, vp_cost and vr_tau > 0");
        }
        if (n.sigma_tuning < 0.0 || n.gamma_scale < 0.0) throw ConfigError("sigma_tuning and gamma_scale must be >= 0");
    }
}

io::json config_to_json(const ExperimentConfig& cfg) {
    const auto& d = cfg.dataset;
    const auto& n = cfg.neuro;
    io::json dataset = {{"kind", std::string(to_string(d.kind))}, {"n_samples", d.n_samples}};
    switch (d.kind) {
        case DatasetKind::blobs:
            dataset["n_centers"] = d.n_centers;
            dataset["cluster_std"] = d.cluster_std;
            dataset["center_box"] = d.center_box;
            dataset["fixed_centers"] = cfg.fixed_centers;
            break;
        case DatasetKind::circles:
            dataset["noise"] = d.noise;
            dataset["factor"] = d.factor;
            break;
        case DatasetKind::moons: dataset["noise"] = d.noise; break;
        case DatasetKind::csv:
            dataset["csv_path"] = d.csv_path;
            dataset["label_column"] = d.label_column;
            break;
    }
    dataset["balance"] = cfg.balance;
    dataset["subsample"] = cfg.subsample;
    return {
        {"dataset", dataset},
        {"kernel", std::string(to_string(cfg.kernel))},
        {"rbf_gamma", cfg.rbf_gamma},
        {"pqk_budget", cfg.pqk_budget},
        {"neuromorphic",
         {{"nodes_per_dim", n.nodes_per_dim},
          {"sigma_tuning", n.sigma_tuning},
          {"t_max", n.t_max},
          {"dt", n.dt},
          {"max_rate", n.max_rate},
          {"lif", {{"beta_decay", n.lif.beta_decay}, {"weight", n.lif.weight}, {"u_thresh", n.lif.u_thresh}}},
          {"qlif",
           {{"theta", n.qlif.theta},
            {"tau_delay", n.qlif.tau_delay},
            {"t1", n.qlif.t1},
            {"alpha_thresh", n.qlif.alpha_thresh}}},
          {"vp_q", n.metric.vp_q},
          {"vp_cost", n.metric.vp_cost},
          {"vr_tau", n.metric.vr_tau},
          {"gamma_scale", n.gamma_scale}}},
        {"k", cfg.k},
        {"k_range", cfg.k_range},
        {"repetitions", cfg.repetitions},
        {"base_seed", cfg.base_seed},
        {"kmeans_restarts", cfg.kmeans_restarts},
        {"kmeans_max_iter", cfg.kmeans_max_iter},
        {"drop_trivial", cfg.drop_trivial},
        {"silhouette_space", cfg.silhouette_space == metrics::SilhouetteSpace::feature ? "feature" : "embedding"},
        {"averaging", cfg.averaging == metrics::Averaging::macro ? "macro" : "weighted"},
        {"output_dir", cfg.output_dir},
    };
}

namespace {

template <class T>
void read_opt(const io::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(const io::json& j) {
    ExperimentConfig cfg;
    try {
        if (j.contains("dataset")) {
            const auto& d = j.at("dataset");
            const auto kind = dataset_kind_from_string(d.value("kind", std::string("blobs")));
            cfg.dataset = DatasetSpec::standard(kind);
            read_opt(d, "n_samples", cfg.dataset.n_samples);
            read_opt(d, "n_centers", cfg.dataset.n_centers);
            read_opt(d, "cluster_std", cfg.dataset.cluster_std);
            read_opt(d, "center_box", cfg.dataset.center_box);
            read_opt(d, "noise", cfg.dataset.noise);
            read_opt(d, "factor", cfg.dataset.factor);
            read_opt(d, "csv_path", cfg.dataset.csv_path);
            read_opt(d, "label_column", cfg.dataset.label_column);
            read_opt(d, "fixed_centers", cfg.fixed_centers);
            read_opt(d, "balance", cfg.balance);
            read_opt(d, "subsample", cfg.subsample);
        }
        if (j.contains("kernel")) cfg.kernel = kernel_choice_from_string(j.at("kernel").get<std::string>());
        read_opt(j, "rbf_gamma", cfg.rbf_gamma);
        read_opt(j, "pqk_budget", cfg.pqk_budget);
        if (j.contains("neuromorphic")) {
            const auto& n = j.at("neuromorphic");
            read_opt(n, "nodes_per_dim", cfg.neuro.nodes_per_dim);
            read_opt(n, "sigma_tuning", cfg.neuro.sigma_tuning);
            read_opt(n, "t_max", cfg.neuro.t_max);
            read_opt(n, "dt", cfg.neuro.dt);
            read_opt(n, "max_rate", cfg.neuro.max_rate);
            if (n.contains("lif")) {
                const auto& l = n.at("lif");
                read_opt(l, "beta_decay", cfg.neuro.lif.beta_decay);
                read_opt(l, "weight", cfg.neuro.lif.weight);
                read_opt(l, "u_thresh", cfg.neuro.lif.u_thresh);
            }
            if (n.contains("qlif")) {
                const auto& q = n.at("qlif");
                read_opt(q, "theta", cfg.neuro.qlif.theta);
                read_opt(q, "tau_delay", cfg.neuro.qlif.tau_delay);
                read_opt(q, "t1", cfg.neuro.qlif.t1);
                read_opt(q, "alpha_thresh", cfg.neuro.qlif.alpha_thresh);
            }
            read_opt(n, "vp_q", cfg.neuro.metric.vp_q);
            read_opt(n, "vp_cost", cfg.neuro.metric.vp_cost);
            read_opt(n, "vr_tau", cfg.neuro.metric.vr_tau);
            read_opt(n, "gamma_scale", cfg.neuro.gamma_scale);
        }
        read_opt(j, "k", cfg.k);
        read_opt(j, "k_range", cfg.k_range);
        read_opt(j, "repetitions", cfg.repetitions);
        read_opt(j, "base_seed", cfg.base_seed);
        read_opt(j, "kmeans_restarts", cfg.kmeans_restarts);
        read_opt(j, "kmeans_max_iter", cfg.kmeans_max_iter);
        read_opt(j, "drop_trivial", cfg.drop_trivial);
        if (j.contains("silhouette_space")) {
            const auto s = j.at("silhouette_space").get<std::string>();
            if (s != "feature" && s != "embedding") throw ConfigError("silhouette_space must be feature or embedding");
            cfg.silhouette_space = s == "feature" ? metrics::SilhouetteSpace::feature : metrics::SilhouetteSpace::embedding;
        }
        if (j.contains("averaging")) {
            const auto s = j.at("averaging").get<std::string>();
            if (s != "macro" && s != "weighted") throw ConfigError("averaging must be macro or weighted");
            cfg.averaging = s == "macro" ? metrics::Averaging::macro : metrics::Averaging::weighted;
        }
        read_opt(j, "output_dir", cfg.output_dir);
    } catch (const io::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

std::string config_hash(const ExperimentConfig& cfg) {
    auto j = config_to_json(cfg);
    j.erase("output_dir");
    return io::fnv1a_hex(j.dump());
}

RepetitionSeeds RepetitionSeeds::from(Seed rep_seed) {
    return {rep_seed, mix_seed(rep_seed, 1), mix_seed(rep_seed, 2), mix_seed(rep_seed, 3)};
}

LabeledDataset prepare_dataset(const ExperimentConfig& cfg, const LabeledDataset* loaded, Seed rep_seed) {
    const auto seeds = RepetitionSeeds::from(rep_seed);
    LabeledDataset ds;
    if (cfg.dataset.kind == DatasetKind::csv) {
        ds = loaded ? *loaded : load_csv(cfg.dataset.csv_path, cfg.dataset.label_column);
        if (cfg.subsample > 0) ds = subsample(ds, cfg.subsample, seeds.resample);
        if (cfg.balance) ds = balance_by_class(ds, mix_seed(seeds.resample, 1));
    } else {
        DatasetSpec spec = cfg.dataset;
        spec.seed = seeds.dataset;
        if (spec.kind == DatasetKind::blobs && cfg.fixed_centers) spec.center_seed = mix_seed(cfg.base_seed, 4);
        ds = generate(spec);
    }
    return scale_to_pi(ds);
}

KernelBuild build_kernel(const LabeledDataset& scaled, const ExperimentConfig& cfg, Seed rep_seed, Exec exec) {
    const auto seeds = RepetitionSeeds::from(rep_seed);
    KernelBuild out;
    switch (cfg.kernel) {
        case KernelChoice::rbf: out.kernel = spectral::rbf_kernel(scaled.features, cfg.rbf_gamma, exec); break;
        case KernelChoice::pqk: {
            out.search = pqk::search_params(scaled.features, scaled.labels, cfg.pqk_budget, seeds.search, exec);
            out.kernel = pqk::gram(scaled.features, out.search->best, exec);
            break;
        }
        default: {
            neuro::NeuromorphicConfig nc = cfg.neuro;
            nc.neuron = cfg.kernel == KernelChoice::lif_vp || cfg.kernel == KernelChoice::lif_vr ? neuro::NeuronKind::lif
                                                                                                : neuro::NeuronKind::qlif;
            nc.metric.metric = cfg.kernel == KernelChoice::lif_vp || cfg.kernel == KernelChoice::qlif_vp
                                   ? neuro::SpikeMetric::vp
                                   : neuro::SpikeMetric::vr;
            out.spiking = neuro::neuromorphic_kernel(scaled.features, nc, exec);
            out.kernel = out.spiking->kernel;
            break;
        }
    }
    return out;
}

namespace {

void accumulate(metrics::MetricsReport& acc, const metrics::MetricsReport& m, double w) {
    acc.accuracy += w * m.accuracy;
    acc.precision += w * m.precision;
    acc.recall += w * m.recall;
    acc.silhouette += w * m.silhouette;
    acc.ari += w * m.ari;
    acc.v_measure += w * m.v_measure;
    acc.homogeneity += w * m.homogeneity;
    acc.completeness += w * m.completeness;
}

metrics::MetricsReport squared_deviation(const metrics::MetricsReport& m, const metrics::MetricsReport& mean) {
    auto sq = [](double a, double b) { return (a - b) * (a - b); };
    return {sq(m.accuracy, mean.accuracy),     sq(m.precision, mean.precision), sq(m.recall, mean.recall),
            sq(m.silhouette, mean.silhouette), sq(m.ari, mean.ari),             sq(m.v_measure, mean.v_measure),
            sq(m.homogeneity, mean.homogeneity), sq(m.completeness, mean.completeness)};
}

metrics::MetricsReport scaled(const metrics::MetricsReport& m, double w) {
    metrics::MetricsReport out;
    accumulate(out, m, w);
    return out;
}

metrics::MetricsReport sqrt_of(metrics::MetricsReport m) {
    for (double* v : {&m.accuracy, &m.precision, &m.recall, &m.silhouette, &m.ari, &m.v_measure, &m.homogeneity,
                      &m.completeness}) {
        *v = std::sqrt(*v);
    }
    return m;
}

}  // namespace

Aggregate aggregate(const std::vector<metrics::MetricsReport>& runs) {
    Aggregate a;
    a.successful = static_cast<int>(runs.size());
    if (runs.empty()) return a;
    const double n = static_cast<double>(runs.size());
    // shifted by the first run so identical runs give an exact mean and zero std
    metrics::MetricsReport shift_sum;
    for (const auto& m : runs) {
        accumulate(shift_sum, m, 1.0);
        accumulate(shift_sum, runs.front(), -1.0);
    }
    a.mean = runs.front();
    accumulate(a.mean, shift_sum, 1.0 / n);
    if (runs.size() > 1) {
        metrics::MetricsReport var;
        for (const auto& m : runs) accumulate(var, squared_deviation(m, a.mean), 1.0);
        a.std = sqrt_of(scaled(var, 1.0 / (n - 1.0)));
    }
    return a;
}

namespace {

std::optional<LabeledDataset> load_once(const ExperimentConfig& cfg) {
    if (cfg.dataset.kind != DatasetKind::csv) return std::nullopt;
    return load_csv(cfg.dataset.csv_path, cfg.dataset.label_column);
}

std::string dataset_label(const ExperimentConfig& cfg, const std::optional<LabeledDataset>& loaded) {
    std::string name = loaded ? loaded->name : std::string(to_string(cfg.dataset.kind));
    if (cfg.balance) name += "*";
    return name;
}

spectral::SpectralConfig spectral_config(const ExperimentConfig& cfg, int k, Seed rep_seed) {
    return {k, cfg.kmeans_restarts, cfg.kmeans_max_iter, RepetitionSeeds::from(rep_seed).kmeans, cfg.drop_trivial};
}

void finish_report(ExperimentReport& report) {
    std::vector<metrics::MetricsReport> ok;
    for (const auto& rep : report.repetitions) {
        if (rep.ok) {
            ok.push_back(rep.metrics);
            if (report.k == 0) report.k = rep.k;
        }
    }
    report.summary = aggregate(ok);
    report.partial = report.summary.successful < static_cast<int>(report.repetitions.size());
    report.single_run = report.summary.successful == 1;
}

}  // namespace

ExperimentReport run(const ExperimentConfig& cfg, Exec exec) {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();
    const auto loaded = load_once(cfg);

    ExperimentReport report;
    report.config = cfg;
    report.dataset_name = dataset_label(cfg, loaded);
    report.k = cfg.k;
    report.repetitions.resize(static_cast<std::size_t>(cfg.repetitions));

    for_each_index(
        cfg.repetitions,
        [&](Eigen::Index r) {
            RepetitionResult& rep = report.repetitions[static_cast<std::size_t>(r)];
            rep.index = static_cast<int>(r);
            rep.seed = cfg.base_seed + static_cast<Seed>(r);
            try {
                const LabeledDataset ds = prepare_dataset(cfg, loaded ? &*loaded : nullptr, rep.seed);
                rep.k = cfg.k > 0 ? cfg.k : ds.n_classes;
                const KernelBuild build = build_kernel(ds, cfg, rep.seed, exec);
                if (build.search) rep.pqk_kta = build.search->best_kta;
                const auto assignment = spectral::spectral_cluster(build.kernel.values, spectral_config(cfg, rep.k, rep.seed), exec);
                rep.degenerate = assignment.degenerate;
                const Matrix& points =
                    cfg.silhouette_space == metrics::SilhouetteSpace::feature ? ds.features : assignment.embedding;
                rep.metrics = metrics::evaluate(assignment.labels, ds.labels, points, cfg.averaging);
                rep.ok = true;
            } catch (const std::exception& e) {
                rep.error = e.what();
            }
        },
        exec);

    finish_report(report);
    report.wall_seconds = seconds_since(start);
    return report;
}

SweepReport sweep(const ExperimentConfig& cfg, Exec exec) {
    validate(cfg);
    if (cfg.k_range.empty()) throw ConfigError("sweep needs a non-empty k_range");
    const auto start = std::chrono::steady_clock::now();
    const auto loaded = load_once(cfg);
    const std::size_t reps = static_cast<std::size_t>(cfg.repetitions);
    const std::size_t nk = cfg.k_range.size();

    SweepReport out;
    out.config = cfg;
    out.dataset_name = dataset_label(cfg, loaded);
    out.per_repetition.resize(reps);
    out.errors.resize(reps);
    // results[r][ki]
    std::vector<std::vector<RepetitionResult>> results(reps, std::vector<RepetitionResult>(nk));

    for_each_index(
        cfg.repetitions,
        [&](Eigen::Index r) {
            const auto ur = static_cast<std::size_t>(r);
            const Seed seed = cfg.base_seed + static_cast<Seed>(r);
            try {
                const LabeledDataset ds = prepare_dataset(cfg, loaded ? &*loaded : nullptr, seed);
                for (int k : cfg.k_range) {
                    if (k > ds.n() - 1) throw ArgumentError("k=" + std::to_string(k) + " exceeds n-1");
                }
                const KernelBuild build = build_kernel(ds, cfg, seed, exec);
                const spectral::SpectralModel model(build.kernel.values);
                metrics::KSweep curve;
                curve.k_values = cfg.k_range;
                for (std::size_t ki = 0; ki < nk; ++ki) {
                    RepetitionResult& rep = results[ur][ki];
                    rep.index = static_cast<int>(r);
                    rep.seed = seed;
                    rep.k = cfg.k_range[ki];
                    if (build.search) rep.pqk_kta = build.search->best_kta;
                    const auto assignment = model.cluster(spectral_config(cfg, rep.k, seed), exec);
                    rep.degenerate = assignment.degenerate;
                    if (assignment.degenerate) curve.degenerate_k.push_back(rep.k);
                    const Matrix& points =
                        cfg.silhouette_space == metrics::SilhouetteSpace::feature ? ds.features : assignment.embedding;
                    rep.metrics = metrics::evaluate(assignment.labels, ds.labels, points, cfg.averaging);
                    rep.ok = true;
                    curve.silhouette.push_back(rep.metrics.silhouette);
                    curve.ari.push_back(rep.metrics.ari);
                    curve.v_measure.push_back(rep.metrics.v_measure);
                }
                metrics::finalize(curve);
                out.per_repetition[ur] = std::move(curve);
            } catch (const std::exception& e) {
                out.errors[ur] = e.what();
                for (auto& rep : results[ur]) {
                    rep.ok = false;
                    rep.error = e.what();
                }
            }
        },
        exec);

    out.mean_curve.k_values = cfg.k_range;
    for (std::size_t ki = 0; ki < nk; ++ki) {
        ExperimentReport per_k;
        per_k.config = cfg;
        per_k.config.k = cfg.k_range[ki];
        per_k.dataset_name = out.dataset_name;
        per_k.k = cfg.k_range[ki];
        for (std::size_t r = 0; r < reps; ++r) {
            RepetitionResult rep = results[r][ki];
            rep.index = static_cast<int>(r);
            rep.seed = cfg.base_seed + r;
            rep.k = cfg.k_range[ki];
            per_k.repetitions.push_back(std::move(rep));
        }
        finish_report(per_k);
        if (std::any_of(per_k.repetitions.begin(), per_k.repetitions.end(), [](const auto& r) { return r.degenerate; })) {
            out.mean_curve.degenerate_k.push_back(per_k.k);
        }
        out.mean_curve.silhouette.push_back(per_k.summary.mean.silhouette);
        out.mean_curve.ari.push_back(per_k.summary.mean.ari);
        out.mean_curve.v_measure.push_back(per_k.summary.mean.v_measure);
        out.per_k.push_back(std::move(per_k));
    }
    metrics::finalize(out.mean_curve);
    out.wall_seconds = seconds_since(start);
    for (auto& r : out.per_k) r.wall_seconds = out.wall_seconds;
    return out;
}

double metric_value(const metrics::MetricsReport& m, std::string_view name) {
    if (name == "accuracy") return m.accuracy;
    if (name == "precision") return m.precision;
    if (name == "recall") return m.recall;
    if (name == "silhouette") return m.silhouette;
    if (name == "ari") return m.ari;
    if (name == "v_measure") return m.v_measure;
    if (name == "homogeneity") return m.homogeneity;
    if (name == "completeness") return m.completeness;
    throw ArgumentError("unknown metric '" + std::string(name) + "'");
}

ComparisonTable compare(const std::vector<ExperimentReport>& reports) {
    if (reports.empty()) throw ArgumentError("compare: no reports");
    const auto dataset_of = [](const ExperimentReport& r) { return config_to_json(r.config).at("dataset"); };
    const auto reference = dataset_of(reports.front());
    ComparisonTable table;
    table.dataset_name = reports.front().dataset_name;
    for (const auto& r : reports) {
        if (dataset_of(r) != reference) throw ArgumentError("compare: reports use different datasets");
        table.rows.push_back({std::string(to_string(r.config.kernel)), r.summary, {}});
    }
    for (const char* metric : kMetricNames) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& row : table.rows) best = std::max(best, metric_value(row.summary.mean, metric));
        for (auto& row : table.rows) row.best.push_back(metric_value(row.summary.mean, metric) == best);
    }
    return table;
}

ComparisonTable compare(const std::vector<ExperimentConfig>& configs, Exec exec) {
    if (configs.empty()) throw ArgumentError("compare: no configs");
    const auto reference = config_to_json(configs.front()).at("dataset");
    for (const auto& c : configs) {
        if (config_to_json(c).at("dataset") != reference) throw ArgumentError("compare: configs use different datasets");
    }
    std::vector<ExperimentReport> reports;
    for (const auto& c : configs) reports.push_back(run(c, exec));
    return compare(reports);
}

io::json report_to_json(const ExperimentReport& r) {
    io::json reps = io::json::array();
    for (const auto& rep : r.repetitions) {
        io::json item = {{"index", rep.index}, {"seed", rep.seed}, {"ok", rep.ok}, {"k", rep.k}};
        if (rep.ok) {
            item["metrics"] = io::metrics_to_json(rep.metrics);
            item["degenerate"] = rep.degenerate;
            if (r.config.kernel == KernelChoice::pqk) item["pqk_kta"] = rep.pqk_kta;
        } else {
            item["error"] = rep.error;
        }
        reps.push_back(std::move(item));
    }
    return {{"config", config_to_json(r.config)},
            {"config_hash", config_hash(r.config)},
            {"dataset", r.dataset_name},
            {"kernel", std::string(to_string(r.config.kernel))},
            {"k", r.k},
            {"repetitions", std::move(reps)},
            {"successful", r.summary.successful},
            {"partial", r.partial},
            {"single_run", r.single_run},
            {"mean", io::metrics_to_json(r.summary.mean)},
            {"std", io::metrics_to_json(r.summary.std)},
            {"wall_seconds", r.wall_seconds}};
}

io::json sweep_to_json(const SweepReport& s) {
    io::json per_rep = io::json::array();
    for (std::size_t r = 0; r < s.per_repetition.size(); ++r) {
        if (s.errors[r].empty()) {
            per_rep.push_back(io::sweep_to_json(s.per_repetition[r]));
        } else {
            per_rep.push_back({{"error", s.errors[r]}});
        }
    }
    io::json per_k = io::json::array();
    for (const auto& r : s.per_k) {
        per_k.push_back({{"k", r.k},
                         {"successful", r.summary.successful},
                         {"mean", io::metrics_to_json(r.summary.mean)},
                         {"std", io::metrics_to_json(r.summary.std)}});
    }
    return {{"config", config_to_json(s.config)},
            {"config_hash", config_hash(s.config)},
            {"dataset", s.dataset_name},
            {"kernel", std::string(to_string(s.config.kernel))},
            {"mean_curve", io::sweep_to_json(s.mean_curve)},
            {"per_repetition", std::move(per_rep)},
            {"per_k", std::move(per_k)},
            {"wall_seconds", s.wall_seconds}};
}

io::json comparison_to_json(const ComparisonTable& t) {
    io::json rows = io::json::array();
    for (const auto& row : t.rows) {
        io::json best = io::json::object();
        for (std::size_t m = 0; m < row.best.size(); ++m) best[kMetricNames[m]] = static_cast<bool>(row.best[m]);
        rows.push_back({{"kernel", row.label},
                        {"successful", row.summary.successful},
                        {"mean", io::metrics_to_json(row.summary.mean)},
                        {"std", io::metrics_to_json(row.summary.std)},
                        {"best", best}});
    }
    return {{"dataset", t.dataset_name}, {"rows", std::move(rows)}};
}

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ArgumentError("cannot create output directory " + dir + ": " + ec.message());
}

void write_metric_row(std::ostream& out, const metrics::MetricsReport& m) {
    out << csv::format_double(m.accuracy) << ',' << csv::format_double(m.precision) << ','
        << csv::format_double(m.recall) << ',' << csv::format_double(m.silhouette) << ',' << csv::format_double(m.ari)
        << ',' << csv::format_double(m.v_measure) << ',' << csv::format_double(m.homogeneity) << ','
        << csv::format_double(m.completeness);
}

constexpr const char* kRepHeader =
    "dataset,kernel,k,seed,accuracy,precision,recall,silhouette,ari,v_measure,homogeneity,completeness\n";

void write_rep_rows(std::ostream& out, const ExperimentReport& r) {
    for (const auto& rep : r.repetitions) {
        if (!rep.ok) continue;
        out << r.dataset_name << ',' << to_string(r.config.kernel) << ',' << rep.k << ',' << rep.seed << ',';
        write_metric_row(out, rep.metrics);
        out << '\n';
    }
}

}  // namespace

void write_report(const ExperimentReport& r, const std::string& dir) {
    ensure_dir(dir);
    io::write_json(report_to_json(r), dir + "/report.json");
    std::ofstream out(dir + "/reps.csv");
    if (!out) throw ArgumentError("cannot write " + dir + "/reps.csv");
    out << kRepHeader;
    write_rep_rows(out, r);
}

void write_sweep(const SweepReport& s, const std::string& dir) {
    ensure_dir(dir);
    io::write_json(sweep_to_json(s), dir + "/sweep.json");
    io::write_sweep_csv(s.mean_curve, dir + "/sweep_curve.csv");
    std::ofstream out(dir + "/sweep_reps.csv");
    if (!out) throw ArgumentError("cannot write " + dir + "/sweep_reps.csv");
    out << kRepHeader;
    for (const auto& r : s.per_k) write_rep_rows(out, r);
}

void write_comparison(const ComparisonTable& t, const std::string& dir) {
    ensure_dir(dir);
    io::write_json(comparison_to_json(t), dir + "/comparison.json");
    std::ofstream out(dir + "/comparison.csv");
    if (!out) throw ArgumentError("cannot write " + dir + "/comparison.csv");
    out << "dataset,kernel";
    for (const char* m : kMetricNames) out << ',' << m << "_mean," << m << "_std";
    out << '\n';
    for (const auto& row : t.rows) {
        out << t.dataset_name << ',' << row.label;
        for (std::size_t m = 0; m < std::size(kMetricNames); ++m) {
            out << ',' << csv::format_double(metric_value(row.summary.mean, kMetricNames[m])) << (row.best[m] ? "*" : "")
                << ',' << csv::format_double(metric_value(row.summary.std, kMetricNames[m]));
        }
        out << '\n';
    }
}

}  // namespace qsc::experiment

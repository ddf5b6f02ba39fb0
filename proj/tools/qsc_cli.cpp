// qsc: command-line front end for the kernel / spectral clustering pipeline.

#include "qsc/csv.hpp"
#include "qsc/errors.hpp"
#include "qsc/experiment.hpp"
#include "qsc/io.hpp"
#include "qsc/spectral.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace ex = qsc::experiment;
using qsc::io::json;

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::string> dataset;
    std::optional<std::string> data_path;
    std::optional<std::string> label_column;
    std::optional<int> n_samples;
    std::optional<double> noise;
    std::optional<double> cluster_std;
    std::optional<double> factor;
    std::optional<int> centers;
    bool balance = false;
    bool redraw_centers = false;
    std::optional<int> subsample;

    std::optional<std::string> kernel;
    std::optional<double> rbf_gamma;
    std::optional<int> pqk_budget;
    std::optional<int> nodes_per_dim;
    std::optional<double> sigma;
    std::optional<double> t_max;
    std::optional<double> dt;
    std::optional<int> max_rate;
    std::optional<double> lif_beta;
    std::optional<double> lif_weight;
    std::optional<double> lif_threshold;
    std::optional<double> qlif_theta;
    std::optional<double> qlif_tau;
    std::optional<double> qlif_t1;
    std::optional<double> qlif_threshold;
    std::optional<double> vp_q;
    std::optional<double> vp_cost;
    std::optional<double> vr_tau;
    std::optional<double> spike_gamma;

    std::optional<int> k;
    std::optional<std::string> k_range;
    std::optional<int> reps;
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;
    std::optional<int> max_iter;
    bool drop_trivial = false;
    std::optional<std::string> silhouette_space;
    std::optional<std::string> averaging;
    std::optional<std::string> out;
    bool serial = false;
};

void add_dataset_flags(CLI::App* app, Overrides& o) {
    app->add_option("--config", o.config_path, "JSON config file (flags override its keys)")->check(CLI::ExistingFile);
    app->add_option("--dataset", o.dataset, "blobs | circles | moons | csv");
    app->add_option("--data", o.data_path, "CSV file for --dataset csv (headered)");
    app->add_option("--label-column", o.label_column, "label column name in --data");
    app->add_option("--n", o.n_samples, "synthetic sample count");
    app->add_option("--noise", o.noise, "circles/moons noise std");
    app->add_option("--cluster-std", o.cluster_std, "blobs cluster std");
    app->add_option("--factor", o.factor, "circles inner/outer radius ratio");
    app->add_option("--centers", o.centers, "blobs centre count");
    app->add_flag("--balance", o.balance, "csv: balanced per-class resample each repetition");
    app->add_flag("--redraw-centers", o.redraw_centers, "blobs: new centre layout every repetition");
    app->add_option("--subsample", o.subsample, "csv: random subset size per repetition");
    app->add_option("--seed", o.seed, "base seed (repetition r uses seed + r)");
    app->add_option("--out", o.out, "output directory (default $QSC_OUT_DIR or ./qsc_out)");
    app->add_flag("--serial", o.serial, "disable OpenMP paths");
}

void add_kernel_flags(CLI::App* app, Overrides& o) {
    app->add_option("--kernel", o.kernel, "pqk | rbf | lif_vp | lif_vr | qlif_vp | qlif_vr");
    app->add_option("--rbf-gamma", o.rbf_gamma, "RBF gamma");
    app->add_option("--pqk-budget", o.pqk_budget, "pQK random-search candidates");
    app->add_option("--nodes-per-dim", o.nodes_per_dim, "population lattice nodes per feature (0 = auto)");
    app->add_option("--sigma", o.sigma, "tuning-curve width (0 = lattice spacing)");
    app->add_option("--t-max", o.t_max, "spike window length");
    app->add_option("--dt", o.dt, "spike time bin");
    app->add_option("--max-rate", o.max_rate, "spikes emitted by a fully tuned neuron");
    app->add_option("--lif-beta", o.lif_beta, "LIF membrane decay");
    app->add_option("--lif-weight", o.lif_weight, "LIF input weight");
    app->add_option("--lif-threshold", o.lif_threshold, "LIF firing threshold");
    app->add_option("--qlif-theta", o.qlif_theta, "QLIF rotation per input spike");
    app->add_option("--qlif-tau", o.qlif_tau, "QLIF delay per bin (units of T1)");
    app->add_option("--qlif-t1", o.qlif_t1, "QLIF relaxation time");
    app->add_option("--qlif-threshold", o.qlif_threshold, "QLIF firing threshold on the excited population");
    app->add_option("--vp-q", o.vp_q, "Victor-Purpura shift cost per unit time");
    app->add_option("--vp-cost", o.vp_cost, "Victor-Purpura insert/delete cost");
    app->add_option("--vr-tau", o.vr_tau, "van Rossum time constant");
    app->add_option("--spike-gamma", o.spike_gamma, "distance-kernel gamma (0 = median heuristic)");
}

void add_cluster_flags(CLI::App* app, Overrides& o) {
    app->add_option("--k", o.k, "cluster count (0 = class count)");
    app->add_option("--restarts", o.restarts, "k-means restarts");
    app->add_option("--max-iter", o.max_iter, "k-means iteration cap");
    app->add_flag("--drop-trivial", o.drop_trivial, "skip the first eigenvector in the embedding");
}

void add_eval_flags(CLI::App* app, Overrides& o) {
    app->add_option("--silhouette-space", o.silhouette_space, "feature | embedding");
    app->add_option("--averaging", o.averaging, "macro | weighted");
}

std::vector<int> parse_k_range(const std::string& text) {
    std::vector<int> out;
    try {
        const auto colon = text.find(':');
        if (colon != std::string::npos) {
            const int lo = std::stoi(text.substr(0, colon));
            const int hi = std::stoi(text.substr(colon + 1));
            for (int k = lo; k <= hi; ++k) out.push_back(k);
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
        }
    } catch (const std::logic_error&) {
        throw qsc::ConfigError("--k-range expects LO:HI or a comma list, got '" + text + "'");
    }
    if (out.empty()) throw qsc::ConfigError("--k-range is empty");
    return out;
}

ex::ExperimentConfig resolve(const Overrides& o) {
    ex::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = ex::config_from_json(qsc::io::read_json(o.config_path));

    if (o.dataset) {
        const auto kind = qsc::dataset_kind_from_string(*o.dataset);
        if (kind != cfg.dataset.kind) {
            const auto keep = cfg.dataset;
            cfg.dataset = qsc::DatasetSpec::standard(kind);
            cfg.dataset.n_samples = keep.n_samples;
        }
    }
    auto& d = cfg.dataset;
    if (o.data_path) {
        d.csv_path = *o.data_path;
        if (!o.dataset) d.kind = qsc::DatasetKind::csv;
    }
    if (o.label_column) d.label_column = *o.label_column;
    if (o.n_samples) d.n_samples = *o.n_samples;
    if (o.noise) d.noise = *o.noise;
    if (o.cluster_std) d.cluster_std = *o.cluster_std;
    if (o.factor) d.factor = *o.factor;
    if (o.centers) d.n_centers = *o.centers;
    if (o.balance) cfg.balance = true;
    if (o.redraw_centers) cfg.fixed_centers = false;
    if (o.subsample) cfg.subsample = *o.subsample;

    if (o.kernel) cfg.kernel = ex::kernel_choice_from_string(*o.kernel);
    if (o.rbf_gamma) cfg.rbf_gamma = *o.rbf_gamma;
    if (o.pqk_budget) cfg.pqk_budget = *o.pqk_budget;
    auto& n = cfg.neuro;
    if (o.nodes_per_dim) n.nodes_per_dim = *o.nodes_per_dim;
    if (o.sigma) n.sigma_tuning = *o.sigma;
    if (o.t_max) n.t_max = *o.t_max;
    if (o.dt) n.dt = *o.dt;
    if (o.max_rate) n.max_rate = *o.max_rate;
    if (o.lif_beta) n.lif.beta_decay = *o.lif_beta;
    if (o.lif_weight) n.lif.weight = *o.lif_weight;
    if (o.lif_threshold) n.lif.u_thresh = *o.lif_threshold;
    if (o.qlif_theta) n.qlif.theta = *o.qlif_theta;
    if (o.qlif_tau) n.qlif.tau_delay = *o.qlif_tau;
    if (o.qlif_t1) n.qlif.t1 = *o.qlif_t1;
    if (o.qlif_threshold) n.qlif.alpha_thresh = *o.qlif_threshold;
    if (o.vp_q) n.metric.vp_q = *o.vp_q;
    if (o.vp_cost) n.metric.vp_cost = *o.vp_cost;
    if (o.vr_tau) n.metric.vr_tau = *o.vr_tau;
    if (o.spike_gamma) n.gamma_scale = *o.spike_gamma;

    if (o.k) cfg.k = *o.k;
    if (o.k_range) cfg.k_range = parse_k_range(*o.k_range);
    if (o.reps) cfg.repetitions = *o.reps;
    if (o.seed) cfg.base_seed = *o.seed;
    if (o.restarts) cfg.kmeans_restarts = *o.restarts;
    if (o.max_iter) cfg.kmeans_max_iter = *o.max_iter;
    if (o.drop_trivial) cfg.drop_trivial = true;
    if (o.silhouette_space) {
        if (*o.silhouette_space == "feature") cfg.silhouette_space = qsc::metrics::SilhouetteSpace::feature;
        else if (*o.silhouette_space == "embedding") cfg.silhouette_space = qsc::metrics::SilhouetteSpace::embedding;
        else throw qsc::ConfigError("--silhouette-space must be feature or embedding");
    }
    if (o.averaging) {
        if (*o.averaging == "macro") cfg.averaging = qsc::metrics::Averaging::macro;
        else if (*o.averaging == "weighted") cfg.averaging = qsc::metrics::Averaging::weighted;
        else throw qsc::ConfigError("--averaging must be macro or weighted");
    }

    if (o.out) {
        cfg.output_dir = *o.out;
    } else if (cfg.output_dir.empty()) {
        const char* env = std::getenv("QSC_OUT_DIR");
        cfg.output_dir = env && *env ? env : "qsc_out";
    }
    ex::validate(cfg);
    return cfg;
}

qsc::Exec exec_of(const Overrides& o) { return o.serial ? qsc::Exec::serial : qsc::Exec::parallel; }

std::optional<qsc::LabeledDataset> load_if_csv(const ex::ExperimentConfig& cfg) {
    if (cfg.dataset.kind != qsc::DatasetKind::csv) return std::nullopt;
    return qsc::load_csv(cfg.dataset.csv_path, cfg.dataset.label_column);
}

std::string path_in(const std::string& dir, const char* file) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / file).string();
}

void print_summary(const ex::ExperimentReport& r) {
    const auto& s = r.summary;
    std::cout << r.dataset_name << " / " << ex::to_string(r.config.kernel) << "  k=" << r.k << "  runs "
              << s.successful << "/" << r.repetitions.size() << (r.partial ? " (partial)" : "") << '\n';
    for (const char* m : ex::kMetricNames) {
        std::cout << "  " << m << ": " << ex::metric_value(s.mean, m) << " +- " << ex::metric_value(s.std, m) << '\n';
    }
    for (const auto& rep : r.repetitions) {
        if (!rep.ok) std::cerr << "  repetition " << rep.index << " failed: " << rep.error << '\n';
    }
}

int cmd_generate(const Overrides& o, bool scaled) {
    const auto cfg = resolve(o);
    const auto loaded = load_if_csv(cfg);
    qsc::LabeledDataset ds;
    if (scaled) {
        ds = ex::prepare_dataset(cfg, loaded ? &*loaded : nullptr, cfg.base_seed);
    } else if (loaded) {
        ds = *loaded;
        const auto seeds = ex::RepetitionSeeds::from(cfg.base_seed);
        if (cfg.subsample > 0) ds = qsc::subsample(ds, cfg.subsample, seeds.resample);
        if (cfg.balance) ds = qsc::balance_by_class(ds, qsc::mix_seed(seeds.resample, 1));
    } else {
        auto spec = cfg.dataset;
        spec.seed = cfg.base_seed;
        ds = qsc::generate(spec);
    }
    const auto path = path_in(cfg.output_dir, "dataset.csv");
    qsc::write_csv(ds, path);
    std::cout << "wrote " << path << " (" << ds.n() << " x " << ds.d() << ", " << ds.n_classes << " classes)\n";
    return 0;
}

int cmd_kernel(const Overrides& o, bool with_spikes) {
    const auto cfg = resolve(o);
    const auto loaded = load_if_csv(cfg);
    const auto ds = ex::prepare_dataset(cfg, loaded ? &*loaded : nullptr, cfg.base_seed);
    const auto build = ex::build_kernel(ds, cfg, cfg.base_seed, exec_of(o));
    const auto& dir = cfg.output_dir;

    qsc::write_csv(ds, path_in(dir, "dataset.csv"));
    qsc::io::write_kernel_csv(build.kernel, path_in(dir, "kernel.csv"));
    qsc::io::write_kernel_json(build.kernel, path_in(dir, "kernel.json"));
    json meta = {{"config", ex::config_to_json(cfg)}, {"config_hash", ex::config_hash(cfg)}, {"seed", cfg.base_seed}};
    if (build.search) {
        qsc::io::write_params(build.search->best, path_in(dir, "params.json"));
        meta["pqk_kta"] = build.search->best_kta;
        meta["pqk_best_candidate"] = build.search->best_index;
    }
    if (build.spiking) {
        qsc::csv::write_matrix(build.spiking->distances, path_in(dir, "distances.csv"));
        meta["gamma_scale"] = build.spiking->gamma_scale;
        if (with_spikes) qsc::io::write_spikes(build.spiking->output_trains, path_in(dir, "spikes.csv"));
    }
    if (const auto bad = qsc::check_kernel_invariants(build.kernel); !bad.empty()) {
        std::cerr << "warning: " << bad << '\n';
    }
    qsc::io::write_json(meta, path_in(dir, "kernel_meta.json"));
    std::cout << "wrote " << ds.n() << "x" << ds.n() << " " << ex::to_string(cfg.kernel) << " kernel to " << dir << '\n';
    return 0;
}

int cmd_cluster(const Overrides& o, const std::string& input) {
    const auto cfg = resolve(o);
    const bool is_json = std::filesystem::path(input).extension() == ".json";
    const auto K = is_json ? qsc::io::read_kernel_json(input) : qsc::io::read_kernel_csv(input);
    if (cfg.k < 2) throw qsc::ConfigError("cluster needs --k >= 2");
    const qsc::spectral::SpectralConfig sc{cfg.k, cfg.kmeans_restarts, cfg.kmeans_max_iter,
                                           ex::RepetitionSeeds::from(cfg.base_seed).kmeans, cfg.drop_trivial};
    const auto a = qsc::spectral::spectral_cluster(K.values, sc, exec_of(o));
    qsc::io::write_labels(a.labels, path_in(cfg.output_dir, "labels.csv"));
    qsc::io::write_embedding(a.embedding, path_in(cfg.output_dir, "embedding.csv"));
    qsc::io::write_json({{"k", cfg.k},
                         {"seed", cfg.base_seed},
                         {"degenerate", a.degenerate},
                         {"eigenvalues", std::vector<double>(a.eigenvalues.begin(), a.eigenvalues.end())}},
                        path_in(cfg.output_dir, "cluster.json"));
    if (a.degenerate) std::cerr << "warning: eigenvalue gap at k=" << cfg.k << " is below 1e-10\n";
    std::cout << "wrote labels for " << a.labels.size() << " samples to " << cfg.output_dir << '\n';
    return 0;
}

int cmd_evaluate(const Overrides& o, const std::string& labels_path, const std::string& truth_path,
                 const std::string& embedding_path) {
    const auto cfg = resolve(o);
    const auto truth = qsc::load_csv(truth_path, cfg.dataset.label_column);
    const auto pred = qsc::io::read_labels(labels_path);
    if (pred.size() != truth.labels.size()) throw qsc::ArgumentError("label count differs from dataset rows");
    qsc::Matrix points = truth.features;
    if (cfg.silhouette_space == qsc::metrics::SilhouetteSpace::embedding) {
        if (embedding_path.empty()) throw qsc::ArgumentError("--silhouette-space embedding needs --embedding");
        const auto raw = qsc::csv::read_matrix(embedding_path, true);
        points = raw.rightCols(raw.cols() - 1);
    }
    const auto m = qsc::metrics::evaluate(pred, truth.labels, points, cfg.averaging);
    const auto j = qsc::io::metrics_to_json(m);
    qsc::io::write_json(j, path_in(cfg.output_dir, "metrics.json"));
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_run(const Overrides& o) {
    const auto cfg = resolve(o);
    const auto report = ex::run(cfg, exec_of(o));
    ex::write_report(report, cfg.output_dir);
    print_summary(report);
    return report.summary.successful > 0 ? 0 : 2;
}

int cmd_sweep(const Overrides& o) {
    const auto cfg = resolve(o);
    const auto s = ex::sweep(cfg, exec_of(o));
    ex::write_sweep(s, cfg.output_dir);
    std::cout << s.dataset_name << " / " << ex::to_string(cfg.kernel) << '\n' << "  k  silhouette  ari  v_measure\n";
    for (std::size_t i = 0; i < s.mean_curve.k_values.size(); ++i) {
        std::cout << "  " << s.mean_curve.k_values[i] << "  " << s.mean_curve.silhouette[i] << "  "
                  << s.mean_curve.ari[i] << "  " << s.mean_curve.v_measure[i] << '\n';
    }
    std::cout << "  argmax: silhouette k=" << s.mean_curve.argmax_silhouette << ", ari k=" << s.mean_curve.argmax_ari
              << ", v_measure k=" << s.mean_curve.argmax_v_measure << (s.mean_curve.flat ? " (flat)" : "") << '\n';
    for (std::size_t r = 0; r < s.errors.size(); ++r) {
        if (!s.errors[r].empty()) std::cerr << "  repetition " << r << " failed: " << s.errors[r] << '\n';
    }
    return 0;
}

int cmd_compare(const Overrides& o, const std::vector<std::string>& kernels, const std::vector<std::string>& configs) {
    std::vector<ex::ExperimentConfig> list;
    for (const auto& path : configs) {
        Overrides per = o;
        per.config_path = path;
        list.push_back(resolve(per));
    }
    for (const auto& k : kernels) {
        Overrides per = o;
        per.kernel = k;
        list.push_back(resolve(per));
    }
    if (list.empty()) throw qsc::ArgumentError("compare needs --kernels or --configs");
    const auto table = ex::compare(list, exec_of(o));
    const std::string dir = o.out ? *o.out : list.front().output_dir;
    ex::write_comparison(table, dir);
    std::cout << table.dataset_name << '\n';
    for (const auto& row : table.rows) {
        std::cout << "  " << row.label;
        for (std::size_t m = 0; m < row.best.size(); ++m) {
            std::cout << "  " << ex::kMetricNames[m] << "=" << ex::metric_value(row.summary.mean, ex::kMetricNames[m])
                      << (row.best[m] ? "*" : "");
        }
        std::cout << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum, spiking and RBF kernels for spectral clustering"};
    app.require_subcommand(1);
    Overrides o;

    auto* gen = app.add_subcommand("generate", "write a dataset CSV");
    add_dataset_flags(gen, o);
    bool scaled = false;
    gen->add_flag("--scaled", scaled, "write features after [0, pi] scaling");

    auto* kern = app.add_subcommand("kernel", "build one kernel matrix (seed = --seed)");
    add_dataset_flags(kern, o);
    add_kernel_flags(kern, o);
    bool spikes = false;
    kern->add_flag("--spikes", spikes, "also export output spike trains");

    auto* clus = app.add_subcommand("cluster", "spectral clustering of a stored kernel");
    add_dataset_flags(clus, o);
    add_cluster_flags(clus, o);
    std::string input;
    clus->add_option("--input", input, "kernel CSV or JSON")->required()->check(CLI::ExistingFile);

    auto* eval = app.add_subcommand("evaluate", "score stored labels against a dataset CSV");
    add_dataset_flags(eval, o);
    add_eval_flags(eval, o);
    std::string labels_path;
    std::string truth_path;
    std::string embedding_path;
    eval->add_option("--labels", labels_path, "labels CSV from cluster")->required()->check(CLI::ExistingFile);
    eval->add_option("--truth", truth_path, "dataset CSV with features and labels")->required()->check(CLI::ExistingFile);
    eval->add_option("--embedding", embedding_path, "embedding CSV for embedding-space silhouette");

    auto* runc = app.add_subcommand("run", "seeded repetitions at a fixed k");
    auto* swp = app.add_subcommand("sweep", "score curves over a k range");
    auto* cmp = app.add_subcommand("compare", "run several kernels on one dataset");
    for (auto* sub : {runc, swp, cmp}) {
        add_dataset_flags(sub, o);
        add_kernel_flags(sub, o);
        add_cluster_flags(sub, o);
        add_eval_flags(sub, o);
        sub->add_option("--reps", o.reps, "repetition count");
    }
    swp->add_option("--k-range", o.k_range, "LO:HI or comma list");
    std::vector<std::string> kernels;
    std::vector<std::string> configs;
    cmp->add_option("--kernels", kernels, "kernel names, one row each")->delimiter(',');
    cmp->add_option("--configs", configs, "config files, one row each")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_generate(o, scaled);
        if (*kern) return cmd_kernel(o, spikes);
        if (*clus) return cmd_cluster(o, input);
        if (*eval) return cmd_evaluate(o, labels_path, truth_path, embedding_path);
        if (*runc) return cmd_run(o);
        if (*swp) return cmd_sweep(o);
        if (*cmp) return cmd_compare(o, kernels, configs);
    } catch (const qsc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

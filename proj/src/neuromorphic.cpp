#include "qsc/neuromorphic.hpp"

#include "qsc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsc::neuro {

std::size_t SpikeTrain::bins() const { return static_cast<std::size_t>(std::lround(t_max / dt)); }

namespace {

std::size_t bin_of(double t, double dt, std::size_t bins) {
    const auto b = static_cast<std::size_t>(std::max(0.0, std::floor(t / dt + 1e-9)));
    return std::min(b, bins == 0 ? 0 : bins - 1);
}

}  // namespace

std::vector<std::uint8_t> SpikeTrain::to_binary() const {
    const std::size_t n = bins();
    std::vector<std::uint8_t> bits(n, 0);
    for (double t : times) bits[bin_of(t, dt, n)] = 1;
    return bits;
}

SpikeTrain SpikeTrain::from_binary(const std::vector<std::uint8_t>& bits, double dt) {
    SpikeTrain s;
    s.dt = dt;
    s.t_max = static_cast<double>(bits.size()) * dt;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) s.times.push_back(static_cast<double>(i) * dt);
    }
    return s;
}

void validate(const SpikeTrain& s) {
    if (!(s.dt > 0.0) || !(s.t_max > 0.0)) throw ArgumentError("spike train: dt and t_max must be positive");
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        if (!(s.times[i] >= 0.0 && s.times[i] <= s.t_max)) throw ArgumentError("spike train: time outside [0, t_max]");
        if (i > 0 && !(s.times[i] > s.times[i - 1])) throw ArgumentError("spike train: times not strictly increasing");
    }
}

double QLIFConfig::decay_factor() const { return std::exp(-tau_delay / t1); }

void validate(const LIFConfig& cfg) {
    if (!(cfg.beta_decay > 0.0 && cfg.beta_decay < 1.0)) throw ConfigError("lif: beta_decay must lie in (0, 1)");
    if (!(cfg.u_thresh > 0.0)) throw ConfigError("lif: u_thresh must be positive");
    if (!std::isfinite(cfg.weight)) throw ConfigError("lif: weight must be finite");
}

void validate(const QLIFConfig& cfg) {
    if (!(cfg.theta > 0.0 && cfg.theta <= std::numbers::pi)) throw ConfigError("qlif: theta must lie in (0, pi]");
    if (!(cfg.tau_delay > 0.0) || !(cfg.t1 > 0.0)) throw ConfigError("qlif: tau_delay and t1 must be positive");
    if (!(cfg.alpha_thresh > 0.0 && cfg.alpha_thresh < 1.0)) throw ConfigError("qlif: alpha_thresh must lie in (0, 1)");
}

int default_nodes_per_dim(Eigen::Index d) {
    if (d <= 2) return 8;
    if (d <= 4) return 3;
    return 2;
}

PopulationGrid make_lattice_grid(Eigen::Index d, int nodes_per_dim, double sigma_tuning, double t_max, double dt,
                                 int max_rate) {
    if (d < 1) throw ArgumentError("population grid: dimension must be positive");
    if (nodes_per_dim < 2) throw ArgumentError("population grid: need at least 2 nodes per dimension");
    if (!(dt > 0.0) || !(t_max > 0.0) || max_rate < 1 || max_rate * dt > t_max + 1e-12) {
        throw ArgumentError("population grid: require dt, t_max > 0 and 1 <= max_rate <= t_max / dt");
    }
    const double spacing = std::numbers::pi / (nodes_per_dim - 1);
    Eigen::Index m = 1;
    for (Eigen::Index k = 0; k < d; ++k) m *= nodes_per_dim;

    PopulationGrid grid;
    grid.points.resize(m, d);
    for (Eigen::Index idx = 0; idx < m; ++idx) {
        Eigen::Index rest = idx;
        for (Eigen::Index k = d - 1; k >= 0; --k) {
            grid.points(idx, k) = static_cast<double>(rest % nodes_per_dim) * spacing;
            rest /= nodes_per_dim;
        }
    }
    grid.sigma_tuning = sigma_tuning > 0.0 ? sigma_tuning : spacing;
    grid.t_max = t_max;
    grid.dt = dt;
    grid.max_rate = max_rate;
    return grid;
}

std::vector<SpikeTrain> population_encode(const Vector& x, const PopulationGrid& grid) {
    if (x.size() != grid.points.cols()) throw ArgumentError("population_encode: dimension mismatch");
    const auto bins = static_cast<long>(std::lround(grid.t_max / grid.dt));
    const double inv_two_sigma_sq = 1.0 / (2.0 * grid.sigma_tuning * grid.sigma_tuning);
    std::vector<SpikeTrain> trains(static_cast<std::size_t>(grid.neurons()));
    for (Eigen::Index k = 0; k < grid.neurons(); ++k) {
        SpikeTrain& s = trains[static_cast<std::size_t>(k)];
        s.t_max = grid.t_max;
        s.dt = grid.dt;
        const double dist_sq = (grid.points.row(k).transpose() - x).squaredNorm();
        const double response = std::exp(-dist_sq * inv_two_sigma_sq);
        const long count = std::lround(response * grid.max_rate);
        s.times.reserve(static_cast<std::size_t>(count));
        for (long j = 0; j < count; ++j) {
            s.times.push_back(static_cast<double>(j * bins / count) * grid.dt);
        }
    }
    return trains;
}

SpikeTrain lif_run(const SpikeTrain& input, const LIFConfig& cfg) {
    const auto bits = input.to_binary();
    std::vector<std::uint8_t> out(bits.size(), 0);
    double u = 0.0;
    std::uint8_t fired = 0;
    for (std::size_t t = 0; t < bits.size(); ++t) {
        u = cfg.beta_decay * u + cfg.weight * bits[t] - (fired ? cfg.u_thresh : 0.0);
        fired = u > cfg.u_thresh ? 1 : 0;
        out[t] = fired;
    }
    auto s = SpikeTrain::from_binary(out, input.dt);
    s.t_max = input.t_max;
    return s;
}

namespace {

double checked_population(double alpha) {
    constexpr double tol = 1e-12;
    if (!(alpha >= -tol && alpha <= 1.0 + tol)) {
        throw ArgumentError("qlif: excited population " + std::to_string(alpha) + " outside [0, 1]");
    }
    return std::clamp(alpha, 0.0, 1.0);
}

double sin_sq(double x) {
    const double s = std::sin(x);
    return s * s;
}

}  // namespace

double qlif_memory_angle(double alpha) { return 2.0 * std::asin(std::sqrt(checked_population(alpha))); }

double qlif_decay_angle(double alpha, double tau_delay, double t1) {
    const double a = checked_population(alpha);
    const double target = a * std::exp(-tau_delay / t1);
    return 2.0 * std::asin(std::sqrt(target)) - qlif_memory_angle(a);
}

double qlif_step(double alpha, int x_bit, const QLIFConfig& cfg) {
    const double phi = qlif_memory_angle(alpha);
    if (x_bit) return sin_sq((cfg.theta + phi) / 2.0);
    const double gamma = qlif_decay_angle(alpha, cfg.tau_delay, cfg.t1);
    return sin_sq((gamma + phi) / 2.0);
}

double qlif_step_unified(double alpha, int x_bit, const QLIFConfig& cfg) {
    const double phi = qlif_memory_angle(alpha);
    const double gamma = qlif_decay_angle(alpha, cfg.tau_delay, cfg.t1);
    const double x = x_bit ? 1.0 : 0.0;
    return sin_sq((cfg.theta + phi) * x / 2.0) + sin_sq((gamma + phi) * (x - 1.0) / 2.0);
}

SpikeTrain qlif_run(const SpikeTrain& input, const QLIFConfig& cfg) {
    const auto bits = input.to_binary();
    std::vector<std::uint8_t> out(bits.size(), 0);
    double alpha = 0.0;
    for (std::size_t t = 0; t < bits.size(); ++t) {
        alpha = qlif_step(alpha, bits[t], cfg);
        if (alpha > cfg.alpha_thresh) {
            out[t] = 1;
            alpha = 0.0;
        }
    }
    auto s = SpikeTrain::from_binary(out, input.dt);
    s.t_max = input.t_max;
    return s;
}

namespace {

double vr_pair_sum(const std::vector<double>& a, const std::vector<double>& b, double tau) {
    double sum = 0.0;
    for (double x : a) {
        for (double y : b) sum += std::exp(-std::abs(x - y) / tau);
    }
    return sum;
}

// Orders (a, b) canonically so vr(a, b) and vr(b, a) run the same summation.
bool canonical_first(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return !std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

double vr_from_sums(double self_a, double self_b, double cross) {
    return std::sqrt(std::max(0.5 * (self_a + self_b - 2.0 * cross), 0.0));
}

double vr_distance_cached(const SpikeTrain& a, const SpikeTrain& b, double self_a, double self_b, double tau) {
    if (a.empty() && b.empty()) return 0.0;
    const double cross = canonical_first(a.times, b.times) ? vr_pair_sum(a.times, b.times, tau)
                                                            : vr_pair_sum(b.times, a.times, tau);
    return vr_from_sums(self_a, self_b, cross);
}

}  // namespace

double vr_distance(const SpikeTrain& a, const SpikeTrain& b, double tau) {
    if (!(tau > 0.0)) throw ArgumentError("vr_distance: tau must be positive");
    return vr_distance_cached(a, b, vr_pair_sum(a.times, a.times, tau), vr_pair_sum(b.times, b.times, tau), tau);
}

double vp_distance(const SpikeTrain& a, const SpikeTrain& b, double q, double add_delete_cost) {
    if (!(q >= 0.0)) throw ArgumentError("vp_distance: q must be non-negative");
    const std::vector<double>& rows = a.size() >= b.size() ? a.times : b.times;
    const std::vector<double>& cols = a.size() >= b.size() ? b.times : a.times;
    if (cols.empty()) return add_delete_cost * static_cast<double>(rows.size());

    // Rolling row over the shorter train: g[j] holds G[i][j].
    std::vector<double> g(cols.size() + 1);
    for (std::size_t j = 0; j <= cols.size(); ++j) g[j] = add_delete_cost * static_cast<double>(j);
    for (std::size_t i = 1; i <= rows.size(); ++i) {
        double diag = g[0];
        g[0] = add_delete_cost * static_cast<double>(i);
        for (std::size_t j = 1; j <= cols.size(); ++j) {
            const double up = g[j];
            g[j] = std::min({up + add_delete_cost, g[j - 1] + add_delete_cost,
                             diag + q * std::abs(rows[i - 1] - cols[j - 1])});
            diag = up;
        }
    }
    return g[cols.size()];
}

std::string_view to_string(NeuronKind k) { return k == NeuronKind::lif ? "lif" : "qlif"; }
std::string_view to_string(SpikeMetric m) { return m == SpikeMetric::vp ? "vp" : "vr"; }

double sample_distance(const std::vector<SpikeTrain>& a, const std::vector<SpikeTrain>& b, const MetricParams& params) {
    if (a.size() != b.size()) throw ArgumentError("sample_distance: neuron counts differ");
    double total = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        total += params.metric == SpikeMetric::vp ? vp_distance(a[k], b[k], params.vp_q, params.vp_cost)
                                                  : vr_distance(a[k], b[k], params.vr_tau);
    }
    return total;
}

Matrix distance_matrix(const std::vector<std::vector<SpikeTrain>>& trains, const MetricParams& params, Exec exec) {
    const auto n = static_cast<Eigen::Index>(trains.size());
    const std::size_t m = trains.empty() ? 0 : trains.front().size();
    for (const auto& t : trains) {
        if (t.size() != m) throw ArgumentError("distance_matrix: samples have different neuron counts");
    }
    if (params.metric == SpikeMetric::vp) {
        auto entry = [&](Eigen::Index i, Eigen::Index j) {
            return sample_distance(trains[static_cast<std::size_t>(i)], trains[static_cast<std::size_t>(j)], params);
        };
        return symmetric_fill(n, entry, exec, 0.0);
    }

    if (!(params.vr_tau > 0.0)) throw ArgumentError("vr_distance: tau must be positive");
    // Self terms Σ e^{-|a_i - a_i'|/τ} are shared by every pair touching a train.
    std::vector<double> self(static_cast<std::size_t>(n) * m);
    for_each_index(
        n,
        [&](Eigen::Index i) {
            for (std::size_t k = 0; k < m; ++k) {
                const auto& times = trains[static_cast<std::size_t>(i)][k].times;
                self[static_cast<std::size_t>(i) * m + k] = vr_pair_sum(times, times, params.vr_tau);
            }
        },
        exec);
    auto entry = [&](Eigen::Index i, Eigen::Index j) {
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        double total = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            total += vr_distance_cached(trains[ui][k], trains[uj][k], self[ui * m + k], self[uj * m + k], params.vr_tau);
        }
        return total;
    };
    return symmetric_fill(n, entry, exec, 0.0);
}

double median_heuristic_gamma(const Matrix& distances) {
    const Eigen::Index n = distances.rows();
    std::vector<double> sq;
    sq.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) sq.push_back(distances(i, j) * distances(i, j));
    }
    if (sq.empty()) return 1.0;
    const std::size_t mid = sq.size() / 2;
    std::nth_element(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(mid), sq.end());
    double median = sq[mid];
    if (sq.size() % 2 == 0) {
        median = 0.5 * (median + *std::max_element(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(mid)));
    }
    if (median > 0.0) return 1.0 / median;
    const double max_sq = *std::max_element(sq.begin(), sq.end());
    return max_sq > 0.0 ? 1.0 / max_sq : 1.0;
}

KernelMatrix distance_kernel(const Matrix& distances, double gamma_scale, KernelKind kind) {
    if (distances.rows() != distances.cols()) throw ArgumentError("distance_kernel: matrix is not square");
    if (!(gamma_scale >= 0.0)) throw ArgumentError("distance_kernel: gamma must be non-negative");
    KernelMatrix k;
    k.kind = kind;
    k.values = (-gamma_scale * distances.array().square()).exp().matrix();
    return k;
}

NeuromorphicKernel neuromorphic_kernel(const Matrix& X, const NeuromorphicConfig& cfg, Exec exec) {
    if (cfg.neuron == NeuronKind::lif) {
        validate(cfg.lif);
    } else {
        validate(cfg.qlif);
    }
    const int nodes = cfg.nodes_per_dim > 0 ? cfg.nodes_per_dim : default_nodes_per_dim(X.cols());
    const PopulationGrid grid = make_lattice_grid(X.cols(), nodes, cfg.sigma_tuning, cfg.t_max, cfg.dt, cfg.max_rate);

    NeuromorphicKernel out;
    out.output_trains.resize(static_cast<std::size_t>(X.rows()));
    for_each_index(
        X.rows(),
        [&](Eigen::Index i) {
            auto inputs = population_encode(X.row(i).transpose(), grid);
            auto& outputs = out.output_trains[static_cast<std::size_t>(i)];
            outputs.reserve(inputs.size());
            for (const auto& train : inputs) {
                outputs.push_back(cfg.neuron == NeuronKind::lif ? lif_run(train, cfg.lif) : qlif_run(train, cfg.qlif));
            }
        },
        exec);

    out.distances = distance_matrix(out.output_trains, cfg.metric, exec);
    out.gamma_scale = cfg.gamma_scale > 0.0 ? cfg.gamma_scale : median_heuristic_gamma(out.distances);
    out.kernel = distance_kernel(out.distances, out.gamma_scale,
                                 cfg.metric.metric == SpikeMetric::vp ? KernelKind::vp : KernelKind::vr);
    return out;
}

}  // namespace qsc::neuro

#pragma once

// Spiking pipeline: population coding → LIF/QLIF neuron per receptive field →
// Victor-Purpura or van Rossum distances → Gaussian distance kernel.

#include "qsc/parallel.hpp"
#include "qsc/types.hpp"

#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace qsc::neuro {

/// Sorted spike times on a grid of bin width `dt` over [0, t_max].
struct SpikeTrain {
    std::vector<double> times;
    double t_max = 1.0;
    double dt = 0.01;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    std::size_t bins() const;

    /// One byte per bin, 1 where a spike falls.
    std::vector<std::uint8_t> to_binary() const;
    static SpikeTrain from_binary(const std::vector<std::uint8_t>& bits, double dt);
};

/// Throws ArgumentError unless times are strictly increasing and inside [0, t_max].
void validate(const SpikeTrain& s);

struct LIFConfig {
    double beta_decay = 0.9;  // exp(-1/τ_mem)
    double weight = 0.3;
    double u_thresh = 1.0;
};

struct QLIFConfig {
    double theta = std::numbers::pi / 4.0;  // Rx angle per input spike
    double tau_delay = 0.1;
    double t1 = 1.0;
    double alpha_thresh = 0.5;

    double decay_factor() const;  // exp(-τ/T1)
};

void validate(const LIFConfig& cfg);
void validate(const QLIFConfig& cfg);

/// Receptive-field lattice: one row of `points` per neuron.
struct PopulationGrid {
    Matrix points;
    double sigma_tuning = 1.0;
    double t_max = 1.0;
    double dt = 0.01;
    int max_rate = 50;

    Eigen::Index neurons() const { return points.rows(); }
};

/// Nodes per feature dimension used when none is configured: 8 for d ≤ 2, 3 for d ≤ 4, else 2.
int default_nodes_per_dim(Eigen::Index d);

/// Regular lattice of `nodes_per_dim`^d preferred points over [0, π]^d.
/// `sigma_tuning` ≤ 0 selects the lattice spacing.
PopulationGrid make_lattice_grid(Eigen::Index d, int nodes_per_dim, double sigma_tuning = 0.0, double t_max = 1.0,
                                 double dt = 0.01, int max_rate = 50);

/// Gaussian tuning responses r_k = exp(−‖x − p_k‖² / 2σ²), each rate coded as
/// round(r_k · max_rate) evenly spaced spikes.
std::vector<SpikeTrain> population_encode(const Vector& x, const PopulationGrid& grid);

/// U[t] = β·U[t−1] + W·X[t] − S[t−1]·U_thr, spike when U[t] > U_thr.
SpikeTrain lif_run(const SpikeTrain& input, const LIFConfig& cfg);

/// φ = 2·asin(√α). Values within 1e−12 outside [0,1] are clamped; further out throws.
double qlif_memory_angle(double alpha);

/// Net decay rotation applied after the memory rotation: 2·asin(√(α·e^{−τ/T1})) − φ(α).
/// Lies in [−π, 0] and brings the excited population from α to α·e^{−τ/T1}.
double qlif_decay_angle(double alpha, double tau_delay, double t1);

/// Case form: sin²((θ+φ)/2) on a spike, sin²((γ+φ)/2) otherwise.
double qlif_step(double alpha, int x_bit, const QLIFConfig& cfg);

/// Selector form: sin²((θ+φ)·X/2) + sin²((γ+φ)·(X−1)/2). Agrees with qlif_step.
double qlif_step_unified(double alpha, int x_bit, const QLIFConfig& cfg);

/// Iterates qlif_step from the ground state; fires and resets when α > alpha_thresh.
SpikeTrain qlif_run(const SpikeTrain& input, const QLIFConfig& cfg);

/// van Rossum distance with kernel e^{−t/τ}H(t), normalised by 1/τ.
double vr_distance(const SpikeTrain& a, const SpikeTrain& b, double tau);

/// Victor-Purpura edit distance: shift cost q·|Δt|, insert/delete cost `add_delete_cost`.
double vp_distance(const SpikeTrain& a, const SpikeTrain& b, double q, double add_delete_cost = 1.0);

enum class NeuronKind { lif, qlif };
enum class SpikeMetric { vp, vr };

std::string_view to_string(NeuronKind k);
std::string_view to_string(SpikeMetric m);

struct MetricParams {
    SpikeMetric metric = SpikeMetric::vp;
    double vp_q = 10.0;
    double vp_cost = 1.0;
    double vr_tau = 0.05;
};

/// Per-neuron distances summed over the m paired trains.
double sample_distance(const std::vector<SpikeTrain>& a, const std::vector<SpikeTrain>& b, const MetricParams& params);

/// n×n matrix of sample_distance over all pairs; zero diagonal.
Matrix distance_matrix(const std::vector<std::vector<SpikeTrain>>& trains, const MetricParams& params,
                       Exec exec = Exec::parallel);

/// 1 / median of off-diagonal D². Falls back to 1 / max(D²), then 1, when the median is 0.
double median_heuristic_gamma(const Matrix& distances);

/// K = exp(−γ·D²), entrywise.
KernelMatrix distance_kernel(const Matrix& distances, double gamma_scale, KernelKind kind = KernelKind::vp);

struct NeuromorphicConfig {
    NeuronKind neuron = NeuronKind::qlif;
    MetricParams metric;
    int nodes_per_dim = 0;      // 0 → default_nodes_per_dim(d)
    double sigma_tuning = 0.0;  // 0 → lattice spacing
    double t_max = 1.0;
    double dt = 0.01;
    int max_rate = 50;
    LIFConfig lif;
    QLIFConfig qlif;
    double gamma_scale = 0.0;  // 0 → median heuristic
};

struct NeuromorphicKernel {
    KernelMatrix kernel;
    Matrix distances;
    double gamma_scale = 0.0;
    std::vector<std::vector<SpikeTrain>> output_trains;
};

/// Encodes every row of X, runs the configured neuron on each train and builds the kernel.
NeuromorphicKernel neuromorphic_kernel(const Matrix& X, const NeuromorphicConfig& cfg, Exec exec = Exec::parallel);

}  // namespace qsc::neuro

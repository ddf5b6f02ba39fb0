#pragma once

// File formats shared by the library and the CLI.
//   kernel JSON : {"kind": "...", "n": n, "values": [[...], ...]}
//   kernel CSV  : n rows × n columns, no header
//   params JSON : {"alpha": [...], "beta": [...], "gamma_rot": [...]}
//   labels CSV  : sample_id,cluster
//   spikes CSV  : sample_id,neuron_id,spike_time
//   sweep CSV   : k,silhouette,ari,v_measure

#include "qsc/metrics.hpp"
#include "qsc/neuromorphic.hpp"
#include "qsc/pqk.hpp"
#include "qsc/types.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qsc::io {

using json = nlohmann::json;

json params_to_json(const pqk::EncodingParams& p);
pqk::EncodingParams params_from_json(const json& j);
void write_params(const pqk::EncodingParams& p, const std::string& path);
pqk::EncodingParams read_params(const std::string& path);

json kernel_to_json(const KernelMatrix& k);
KernelMatrix kernel_from_json(const json& j);
void write_kernel_json(const KernelMatrix& k, const std::string& path);
KernelMatrix read_kernel_json(const std::string& path);

/// Headerless square CSV; `kind` is not stored in this format.
void write_kernel_csv(const KernelMatrix& k, const std::string& path);
KernelMatrix read_kernel_csv(const std::string& path, KernelKind kind = KernelKind::rbf);

void write_labels(const Labels& labels, const std::string& path);
Labels read_labels(const std::string& path);

/// sample_id,u0,...,u{k-1}
void write_embedding(const Matrix& U, const std::string& path);

void write_spikes(const std::vector<std::vector<neuro::SpikeTrain>>& trains, const std::string& path);

json metrics_to_json(const metrics::MetricsReport& m);
json sweep_to_json(const metrics::KSweep& s);
void write_sweep_csv(const metrics::KSweep& s, const std::string& path);

json read_json(const std::string& path);
void write_json(const json& j, const std::string& path);
void write_text(const std::string& text, const std::string& path);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace qsc::io

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>
#include <vector>

namespace qsc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Labels = std::vector<int>;
using Seed = std::uint64_t;

/// Which pipeline produced a kernel matrix.
enum class KernelKind { pqk, rbf, vp, vr };

std::string_view to_string(KernelKind kind);
KernelKind kernel_kind_from_string(std::string_view name);

/// Pairwise similarity matrix plus the tag of the kernel that produced it.
struct KernelMatrix {
    Matrix values;
    KernelKind kind = KernelKind::rbf;

    Eigen::Index size() const { return values.rows(); }
};

/// Returns an empty string when `k` is symmetric, bounded in [0,1] and (for pqk/rbf
/// and distance kernels alike) unit-diagonal within `tol`; otherwise the first violation.
std::string check_kernel_invariants(const KernelMatrix& k, double tol = 1e-10);

/// SplitMix64 finaliser; derives independent stream seeds from one base seed.
constexpr Seed mix_seed(Seed base, Seed stream) {
    Seed z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace qsc

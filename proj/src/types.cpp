#include "qsc/types.hpp"

#include "qsc/errors.hpp"

#include <cmath>
#include <string>

namespace qsc {

std::string_view to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::pqk: return "pqk";
        case KernelKind::rbf: return "rbf";
        case KernelKind::vp: return "vp";
        case KernelKind::vr: return "vr";
    }
    return "unknown";
}

KernelKind kernel_kind_from_string(std::string_view name) {
    if (name == "pqk") return KernelKind::pqk;
    if (name == "rbf") return KernelKind::rbf;
    if (name == "vp") return KernelKind::vp;
    if (name == "vr") return KernelKind::vr;
    throw ArgumentError("unknown kernel kind '" + std::string(name) + "'");
}

std::string check_kernel_invariants(const KernelMatrix& k, double tol) {
    const Matrix& v = k.values;
    if (v.rows() != v.cols()) return "kernel is not square";
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        if (std::abs(v(i, i) - 1.0) > tol) return "diagonal entry " + std::to_string(i) + " is not 1";
        for (Eigen::Index j = 0; j < v.cols(); ++j) {
            const double x = v(i, j);
            if (!std::isfinite(x)) return "non-finite entry";
            if (x < -tol || x > 1.0 + tol) return "entry outside [0, 1]";
            if (std::abs(x - v(j, i)) > tol) return "kernel is not symmetric";
        }
    }
    return {};
}

}  // namespace qsc

#pragma once

// Parameterised fidelity kernel: each feature drives one qubit through
// Rz(γ_i x_i) · Ry(β_i x_i) · Rx(α_i x_i) |0⟩, with no entangling gates, so the
// n-qubit overlap factorises into a product of single-qubit overlaps.

#include "qsc/parallel.hpp"
#include "qsc/types.hpp"

#include <complex>
#include <vector>

namespace qsc::pqk {

using Complex = std::complex<double>;

/// Per-feature rotation scales; every entry in [0, 2].
struct EncodingParams {
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> gamma_rot;

    std::size_t dim() const { return alpha.size(); }

    /// All scales equal to `value` (0 gives the identity encoding).
    static EncodingParams uniform(std::size_t d, double value);
};

/// Throws ArgumentError on ragged vectors or entries outside [0, 2].
void validate(const EncodingParams& p);

struct QubitAmplitudes {
    Complex a0{1.0, 0.0};
    Complex a1{0.0, 0.0};
};

/// 2×2 complex matrix, row-major.
struct Gate {
    Complex m00, m01, m10, m11;

    QubitAmplitudes apply(const QubitAmplitudes& s) const {
        return {m00 * s.a0 + m01 * s.a1, m10 * s.a0 + m11 * s.a1};
    }
};

/// R_a(θ) = cos(θ/2)·I − i·sin(θ/2)·A for Pauli A.
Gate rx(double theta);
Gate ry(double theta);
Gate rz(double theta);

QubitAmplitudes encode_qubit(double x, double alpha, double beta, double gamma_rot);

/// |⟨φ(x')|φ(x)⟩|² for one qubit.
double qubit_fidelity(const QubitAmplitudes& a, const QubitAmplitudes& b);

/// Product of per-qubit fidelities. Throws ArgumentError on dimension mismatch.
double fidelity(const Vector& x, const Vector& x_prime, const EncodingParams& p);

/// Encodes every sample once: result is n × d amplitudes (row-major per sample).
std::vector<QubitAmplitudes> encode_rows(const Matrix& X, const EncodingParams& p);

/// Full fidelity Gram matrix; only the upper triangle is evaluated.
KernelMatrix gram(const Matrix& X, const EncodingParams& p, Exec exec = Exec::parallel);

/// Kernel-target alignment against one-hot labels.
/// Throws NumericError if K is the zero matrix.
double kta(const Matrix& K, const Labels& labels);

/// 1 − kta(K, labels).
double kta_loss(const Matrix& K, const Labels& labels);

struct SearchCandidate {
    EncodingParams params;
    double kta = 0.0;
};

struct SearchResult {
    EncodingParams best;
    double best_kta = 0.0;
    std::size_t best_index = 0;
    std::vector<SearchCandidate> trace;
};

/// Seeded random search over [0, 2]^{3d}: `budget` candidates drawn in order
/// (α, β, γ per candidate), each scored by the KTA of its full Gram matrix.
/// Returns the argmax; ties go to the earliest candidate.
SearchResult search_params(const Matrix& X, const Labels& labels, int budget, Seed seed,
                           Exec exec = Exec::parallel);

}  // namespace qsc::pqk

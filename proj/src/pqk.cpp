#include "qsc/pqk.hpp"

#include "qsc/errors.hpp"

#include <cmath>
#include <map>
#include <random>

namespace qsc::pqk {

EncodingParams EncodingParams::uniform(std::size_t d, double value) {
    return {std::vector<double>(d, value), std::vector<double>(d, value), std::vector<double>(d, value)};
}

void validate(const EncodingParams& p) {
    if (p.beta.size() != p.alpha.size() || p.gamma_rot.size() != p.alpha.size()) {
        throw ArgumentError("encoding params: alpha, beta and gamma_rot must have equal length");
    }
    for (const auto* v : {&p.alpha, &p.beta, &p.gamma_rot}) {
        for (double s : *v) {
            if (!(s >= 0.0 && s <= 2.0)) throw ArgumentError("encoding params: scale outside [0, 2]");
        }
    }
}

Gate rx(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {{c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0}};
}

Gate ry(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {{c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0}};
}

Gate rz(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {{c, -s}, {0.0, 0.0}, {0.0, 0.0}, {c, s}};
}

QubitAmplitudes encode_qubit(double x, double alpha, double beta, double gamma_rot) {
    QubitAmplitudes state;
    state = rx(alpha * x).apply(state);
    state = ry(beta * x).apply(state);
    state = rz(gamma_rot * x).apply(state);
    return state;
}

double qubit_fidelity(const QubitAmplitudes& a, const QubitAmplitudes& b) {
    return std::norm(std::conj(b.a0) * a.a0 + std::conj(b.a1) * a.a1);
}

namespace {

void check_dim(Eigen::Index d, const EncodingParams& p) {
    if (static_cast<std::size_t>(d) != p.dim() || p.beta.size() != p.dim() || p.gamma_rot.size() != p.dim()) {
        throw ArgumentError("pqk: feature dimension " + std::to_string(d) + " does not match params of length " +
                            std::to_string(p.dim()));
    }
}

double product_fidelity(const QubitAmplitudes* a, const QubitAmplitudes* b, std::size_t d) {
    double f = 1.0;
    for (std::size_t q = 0; q < d; ++q) f *= qubit_fidelity(a[q], b[q]);
    return f;
}

}  // namespace

double fidelity(const Vector& x, const Vector& x_prime, const EncodingParams& p) {
    if (x.size() != x_prime.size()) throw ArgumentError("fidelity: vectors differ in length");
    check_dim(x.size(), p);
    double f = 1.0;
    for (Eigen::Index q = 0; q < x.size(); ++q) {
        const auto i = static_cast<std::size_t>(q);
        f *= qubit_fidelity(encode_qubit(x[q], p.alpha[i], p.beta[i], p.gamma_rot[i]),
                            encode_qubit(x_prime[q], p.alpha[i], p.beta[i], p.gamma_rot[i]));
    }
    return f;
}

std::vector<QubitAmplitudes> encode_rows(const Matrix& X, const EncodingParams& p) {
    check_dim(X.cols(), p);
    const auto d = static_cast<std::size_t>(X.cols());
    std::vector<QubitAmplitudes> out(static_cast<std::size_t>(X.rows()) * d);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (std::size_t q = 0; q < d; ++q) {
            out[static_cast<std::size_t>(i) * d + q] =
                encode_qubit(X(i, static_cast<Eigen::Index>(q)), p.alpha[q], p.beta[q], p.gamma_rot[q]);
        }
    }
    return out;
}

KernelMatrix gram(const Matrix& X, const EncodingParams& p, Exec exec) {
    const auto states = encode_rows(X, p);
    const auto d = static_cast<std::size_t>(X.cols());
    auto entry = [&](Eigen::Index i, Eigen::Index j) {
        return product_fidelity(&states[static_cast<std::size_t>(i) * d], &states[static_cast<std::size_t>(j) * d], d);
    };
    return {symmetric_fill(X.rows(), entry, exec, 1.0), KernelKind::pqk};
}

double kta(const Matrix& K, const Labels& labels) {
    const Eigen::Index n = K.rows();
    if (K.cols() != n) throw ArgumentError("kta: kernel is not square");
    if (static_cast<Eigen::Index>(labels.size()) != n) throw ArgumentError("kta: label count differs from kernel size");
    double aligned = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]) aligned += K(i, j);
        }
    }
    const double k_norm = K.norm();
    if (k_norm == 0.0) throw NumericError("kta: undefined for the zero kernel");
    std::map<int, double> counts;
    for (int y : labels) counts[y] += 1.0;
    double target_sq = 0.0;  // Tr((YYᵀ)²) = Σ_c n_c²
    for (const auto& [label, c] : counts) target_sq += c * c;
    return aligned / (k_norm * std::sqrt(target_sq));
}

double kta_loss(const Matrix& K, const Labels& labels) { return 1.0 - kta(K, labels); }

SearchResult search_params(const Matrix& X, const Labels& labels, int budget, Seed seed, Exec exec) {
    if (budget < 1) throw ArgumentError("search_params: budget must be at least 1");
    const auto d = static_cast<std::size_t>(X.cols());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> scale(0.0, 2.0);

    SearchResult result;
    result.trace.resize(static_cast<std::size_t>(budget));
    for (auto& cand : result.trace) {
        cand.params = EncodingParams::uniform(d, 0.0);
        for (auto* v : {&cand.params.alpha, &cand.params.beta, &cand.params.gamma_rot}) {
            for (double& s : *v) s = scale(rng);
        }
    }
    // Candidates are independent; the argmax below runs serially in index order.
    for_each_index(
        budget,
        [&](Eigen::Index c) {
            auto& cand = result.trace[static_cast<std::size_t>(c)];
            cand.kta = kta(gram(X, cand.params, Exec::serial).values, labels);
        },
        exec);

    for (std::size_t c = 0; c < result.trace.size(); ++c) {
        if (c == 0 || result.trace[c].kta > result.best_kta) {
            result.best_kta = result.trace[c].kta;
            result.best_index = c;
        }
    }
    result.best = result.trace[result.best_index].params;
    return result;
}

}  // namespace qsc::pqk

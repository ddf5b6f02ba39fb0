#include "qsc/io.hpp"

#include "qsc/csv.hpp"
#include "qsc/errors.hpp"

#include <cstdio>
#include <fstream>

namespace qsc::io {

json params_to_json(const pqk::EncodingParams& p) {
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma_rot", p.gamma_rot}};
}

pqk::EncodingParams params_from_json(const json& j) {
    try {
        pqk::EncodingParams p{j.at("alpha").get<std::vector<double>>(), j.at("beta").get<std::vector<double>>(),
                              j.at("gamma_rot").get<std::vector<double>>()};
        pqk::validate(p);
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("encoding params: ") + e.what());
    }
}

void write_params(const pqk::EncodingParams& p, const std::string& path) { write_json(params_to_json(p), path); }
pqk::EncodingParams read_params(const std::string& path) { return params_from_json(read_json(path)); }

json kernel_to_json(const KernelMatrix& k) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < k.values.rows(); ++i) {
        std::vector<double> row(k.values.cols());
        for (Eigen::Index j = 0; j < k.values.cols(); ++j) row[static_cast<std::size_t>(j)] = k.values(i, j);
        rows.push_back(std::move(row));
    }
    return {{"kind", std::string(to_string(k.kind))}, {"n", k.values.rows()}, {"values", std::move(rows)}};
}

KernelMatrix kernel_from_json(const json& j) {
    try {
        KernelMatrix k;
        k.kind = kernel_kind_from_string(j.at("kind").get<std::string>());
        const auto n = j.at("n").get<Eigen::Index>();
        const auto& rows = j.at("values");
        if (static_cast<Eigen::Index>(rows.size()) != n) throw ParseError("kernel json: row count differs from n");
        k.values.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& row = rows.at(static_cast<std::size_t>(i));
            if (static_cast<Eigen::Index>(row.size()) != n) throw ParseError("kernel json: ragged row " + std::to_string(i));
            for (Eigen::Index c = 0; c < n; ++c) k.values(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
        }
        return k;
    } catch (const json::exception& e) {
        throw ParseError(std::string("kernel json: ") + e.what());
    }
}

void write_kernel_json(const KernelMatrix& k, const std::string& path) { write_json(kernel_to_json(k), path); }
KernelMatrix read_kernel_json(const std::string& path) { return kernel_from_json(read_json(path)); }

void write_kernel_csv(const KernelMatrix& k, const std::string& path) { csv::write_matrix(k.values, path); }

KernelMatrix read_kernel_csv(const std::string& path, KernelKind kind) {
    KernelMatrix k{csv::read_matrix(path), kind};
    if (k.values.rows() != k.values.cols()) throw ParseError(path + ": kernel matrix is not square");
    return k;
}

void write_labels(const Labels& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write " + path);
    out << "sample_id,cluster\n";
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

Labels read_labels(const std::string& path) { return csv::read_int_column(path, "cluster"); }

void write_embedding(const Matrix& U, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write " + path);
    out << "sample_id";
    for (Eigen::Index c = 0; c < U.cols(); ++c) out << ",u" << c;
    out << '\n';
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
        out << i;
        for (Eigen::Index c = 0; c < U.cols(); ++c) out << ',' << csv::format_double(U(i, c));
        out << '\n';
    }
}

void write_spikes(const std::vector<std::vector<neuro::SpikeTrain>>& trains, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write " + path);
    out << "sample_id,neuron_id,spike_time\n";
    for (std::size_t s = 0; s < trains.size(); ++s) {
        for (std::size_t k = 0; k < trains[s].size(); ++k) {
            for (double t : trains[s][k].times) out << s << ',' << k << ',' << csv::format_double(t) << '\n';
        }
    }
}

json metrics_to_json(const metrics::MetricsReport& m) {
    return {{"accuracy", m.accuracy},   {"precision", m.precision},     {"recall", m.recall},
            {"silhouette", m.silhouette}, {"ari", m.ari},               {"v_measure", m.v_measure},
            {"homogeneity", m.homogeneity}, {"completeness", m.completeness}};
}

json sweep_to_json(const metrics::KSweep& s) {
    return {{"k_values", s.k_values},
            {"silhouette", s.silhouette},
            {"ari", s.ari},
            {"v_measure", s.v_measure},
            {"argmax", {{"silhouette", s.argmax_silhouette}, {"ari", s.argmax_ari}, {"v_measure", s.argmax_v_measure}}},
            {"flat", s.flat},
            {"degenerate_k", s.degenerate_k}};
}

void write_sweep_csv(const metrics::KSweep& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write " + path);
    out << "k,silhouette,ari,v_measure\n";
    for (std::size_t i = 0; i < s.k_values.size(); ++i) {
        out << s.k_values[i] << ',' << csv::format_double(s.silhouette[i]) << ',' << csv::format_double(s.ari[i])
            << ',' << csv::format_double(s.v_measure[i]) << '\n';
    }
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json(const json& j, const std::string& path) { write_text(j.dump(2) + "\n", path); }

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write " + path);
    out << text;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qsc::io

#pragma once

// Pairwise matrix builders with an OpenMP path and a serial reference path.
// Both paths evaluate the same f(i, j) on the same index pairs and write disjoint
// cells, so their outputs are bitwise identical.

#include "qsc/types.hpp"

#include <exception>
#include <mutex>
#include <optional>

namespace qsc {

enum class Exec { serial, parallel };

namespace detail {

// Holds the first exception thrown inside an OpenMP loop; rethrown after the loop.
class FirstError {
  public:
    template <class G>
    void run(G&& g) noexcept {
        try {
            g();
        } catch (...) {
            std::lock_guard lock(mu_);
            if (!error_) error_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

  private:
    std::mutex mu_;
    std::exception_ptr error_;
};

template <class F>
void fill_upper_serial(Matrix& out, F& f, bool eval_diagonal) {
    const Eigen::Index n = out.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = eval_diagonal ? i : i + 1; j < n; ++j) {
            const double v = f(i, j);
            out(i, j) = v;
            out(j, i) = v;
        }
    }
}

template <class F>
void fill_upper_omp(Matrix& out, F& f, bool eval_diagonal) {
    const Eigen::Index n = out.rows();
    FirstError err;
#pragma omp parallel for schedule(dynamic, 4)
    for (Eigen::Index i = 0; i < n; ++i) {
        err.run([&] {
            for (Eigen::Index j = eval_diagonal ? i : i + 1; j < n; ++j) {
                const double v = f(i, j);
                out(i, j) = v;
                out(j, i) = v;
            }
        });
    }
    err.rethrow();
}

}  // namespace detail

/// Builds a symmetric n×n matrix from f(i, j) evaluated on the upper triangle.
/// When `diagonal` is set the diagonal is filled with that constant instead of f(i, i).
template <class F>
Matrix symmetric_fill(Eigen::Index n, F&& f, Exec exec, std::optional<double> diagonal = std::nullopt) {
    Matrix out(n, n);
    const bool eval_diagonal = !diagonal.has_value();
    if (exec == Exec::parallel) {
        detail::fill_upper_omp(out, f, eval_diagonal);
    } else {
        detail::fill_upper_serial(out, f, eval_diagonal);
    }
    if (diagonal) {
        out.diagonal().setConstant(*diagonal);
    }
    return out;
}

/// Runs f(i) for i in [0, n). Iterations must be independent. An exception thrown by
/// f reaches the caller on both paths.
template <class F>
void for_each_index(Eigen::Index n, F&& f, Exec exec) {
    if (exec == Exec::parallel) {
        detail::FirstError err;
#pragma omp parallel for schedule(dynamic, 1)
        for (Eigen::Index i = 0; i < n; ++i) {
            err.run([&] { f(i); });
        }
        err.rethrow();
    } else {
        for (Eigen::Index i = 0; i < n; ++i) {
            f(i);
        }
    }
}

}  // namespace qsc

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsc {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration (dataset spec, hyperparameters).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Argument violating an operation's precondition (shape mismatch, out-of-domain value).
class ArgumentError : public Error {
  public:
    using Error::Error;
};

/// Numerical failure: eigensolver non-convergence, undefined normalisation.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// A sample has zero degree in the similarity graph, so L_sym is undefined.
class DegenerateGraphError : public NumericError {
  public:
    explicit DegenerateGraphError(std::size_t sample)
        : NumericError("degenerate graph: sample " + std::to_string(sample) + " has zero degree"),
          sample_(sample) {}

    std::size_t sample() const noexcept { return sample_; }

  private:
    std::size_t sample_;
};

/// A metric is not defined for the given labelling (e.g. silhouette with one cluster).
class UndefinedMetricError : public Error {
  public:
    using Error::Error;
};

}  // namespace qsc

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace tsm {

/// Base class for every error thrown by the engine.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Scalar-grammar or manifest syntax error, with 1-based position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column),
        reason_(msg) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_;
  int column_;
  std::string reason_;
};

/// Semantic manifest problem (missing section, bad mode, failed structural validation).
class ManifestError : public Error {
 public:
  using Error::Error;
};

/// Division or inversion of an expression that is not provably nonzero.
class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

/// Manifold validation failure (frame not invertible, Jacobi defect, metric not SPD...).
class ManifoldError : public Error {
 public:
  using Error::Error;
};

/// Wrong argument count / tensor valence for an operation.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// Operation used outside its contract (lie-mode derivative of a non-constant,
/// star soliton kind without a contact structure, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A theorem checker was invoked on input violating the theorem hypotheses.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace tsm

#pragma once

#include <stdexcept>
#include <string>

namespace fkm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the operation's domain (bad m, non-unit vector, size mismatch).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// (m, k) pair with m2 = l - m - 1 < 1.
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(int m, int k, int l, int m2);
  int m() const { return m_; }
  int k() const { return k_; }
  int l() const { return l_; }
  int m2() const { return m2_; }

 private:
  int m_, k_, l_, m2_;
};

class NotImplementedError : public Error {
 public:
  using Error::Error;
};

/// Gauss-Newton projection ran out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

/// Normal-equation matrix too ill-conditioned to solve.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

class SamplingError : public Error {
 public:
  SamplingError(const std::string& what, int failures)
      : Error(what), failures_(failures) {}
  int failures() const { return failures_; }

 private:
  int failures_;
};

/// A frame or decomposition failed its internal consistency checks.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Shape-operator eigenvalue not within the clustering radius of {0, +1, -1}.
class SpectrumError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Eigenvalue multiplicities differ from (m, l-m-1, l-m-1).
class LemmaViolationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fkm

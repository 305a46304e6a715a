#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace firstint {

/// Base class of every error the engine raises on bad input or a violated
/// contract. `kind()` is a stable machine-readable tag used in error reports.
class EngineError : public std::runtime_error {
public:
  EngineError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

/// Syntax error in a scalar/polynomial literal or an input document.
/// `offset` is a 0-based byte position into the parsed text.
class ParseError : public EngineError {
public:
  ParseError(const std::string& what, std::size_t offset)
      : EngineError("parse_error", what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Structural problem in an input system (bad shapes, missing fields,
/// forbidden low-order terms, non-linear parameter dependence, ...).
class InvalidSystem : public EngineError {
public:
  explicit InvalidSystem(const std::string& what) : EngineError("invalid_system", what) {}
};

class DegreeMismatch : public EngineError {
public:
  DegreeMismatch(int lhs, int rhs)
      : EngineError("degree_mismatch", "homogeneous degrees differ: " + std::to_string(lhs) +
                                           " vs " + std::to_string(rhs)) {}
};

class ConstantTermPresent : public EngineError {
public:
  ConstantTermPresent()
      : EngineError("constant_term_present",
                    "substitution argument has a nonzero constant term") {}
};

class NotLowerTriangular : public EngineError {
public:
  NotLowerTriangular(int row, int col)
      : EngineError("not_lower_triangular",
                    "B[" + std::to_string(row) + "][" + std::to_string(col) +
                        "] above the diagonal is nonzero") {}
};

class ZeroEigenvalue : public EngineError {
public:
  explicit ZeroEigenvalue(int index)
      : EngineError("zero_eigenvalue",
                    "diagonal entry " + std::to_string(index) + " of B is zero") {}
};

/// Some <m~, lambda~> with 2 <= |m~| <= N vanished exactly.
class ResonanceViolation : public EngineError {
public:
  explicit ResonanceViolation(std::vector<int> mtilde)
      : EngineError("resonance_violation", "resonant multi-index " + render(mtilde)),
        mtilde_(std::move(mtilde)) {}

  const std::vector<int>& mtilde() const noexcept { return mtilde_; }

private:
  static std::string render(const std::vector<int>& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(m[i]);
    }
    return s + ")";
  }
  std::vector<int> mtilde_;
};

/// The homological right-hand side carries a pure y1^d monomial, which lies
/// in the kernel of L and cannot be matched.
class KernelComponentInRHS : public EngineError {
public:
  explicit KernelComponentInRHS(int degree)
      : EngineError("kernel_component_in_rhs",
                    "right-hand side of the degree-" + std::to_string(degree) +
                        " homological equation has a pure y1 power"),
        degree_(degree) {}

  int degree() const noexcept { return degree_; }

private:
  int degree_;
};

/// A pure-y1 term survived the center shift: the nonisolatedness
/// precondition failed or the truncations are inconsistent.
class NonVanishingOnCenter : public EngineError {
public:
  explicit NonVanishingOnCenter(int degree)
      : EngineError("non_vanishing_on_center",
                    "shifted system does not vanish on y2 = 0 at degree " +
                        std::to_string(degree)),
        degree_(degree) {}

  int degree() const noexcept { return degree_; }

private:
  int degree_;
};

class InsufficientDegrees : public EngineError {
public:
  explicit InsufficientDegrees(int n)
      : EngineError("insufficient_degrees",
                    "growth analysis needs N >= 4, got N = " + std::to_string(n)) {}
};

class StepUnstable : public EngineError {
public:
  StepUnstable()
      : EngineError("step_unstable",
                    "numerical integration overflowed; reduce the step or horizon") {}
};

/// A contract the engine itself guarantees was violated; indicates a bug.
class InternalError : public EngineError {
public:
  explicit InternalError(const std::string& what) : EngineError("internal_error", what) {}
};

}  // namespace firstint

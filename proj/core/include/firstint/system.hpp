#pragma once

#include <string>
#include <utility>
#include <vector>

#include "firstint/combinatorics.hpp"
#include "firstint/graded_series.hpp"
#include "firstint/ring.hpp"

namespace firstint {

/// Dense square matrix over the scalar ring; used only for the
/// (n-1) x (n-1) linear block B, which is small.
template <typename R>
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}

  std::size_t size() const { return n_; }
  const R& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  R& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

private:
  std::size_t n_ = 0;
  std::vector<R> a_;
};

/// The input system in the coordinates of the blanket assumptions:
///   x1'  = f1(x),        f1 of order >= 2,
///   x2'  = B x2 + f2(x), f2 of order >= 2 componentwise,
/// with B lower triangular and its diagonal the nonzero eigenvalues
/// lambda~ = (lambda_2 .. lambda_n).
template <typename R>
struct SystemSpec {
  std::size_t n = 0;        // phase dimension, >= 2
  std::size_t nparams = 0;  // parameter count (0 outside Qt mode)
  int trunc = 0;            // working degree N >= 2
  Matrix<R> B;              // (n-1) x (n-1), lower triangular
  GradedSeries<R> f1;
  std::vector<GradedSeries<R>> f2;

  R eigenvalue(std::size_t j) const { return B.at(j, j); }  // lambda_{j+2}
};

/// Witness that condition (2) holds through the checked degree: every inner
/// product <m~, lambda~> with 2 <= |m~| <= N_checked is nonzero, together
/// with the smallest magnitude met and where.
struct ResonanceCertificate {
  int n_checked = 0;
  Rational min_magnitude;        // |.| over Q, |.|^2 over Q(i)
  std::string min_divisor_text;  // the divisor itself, exact
  std::vector<int> min_witness;  // the m~ achieving the minimum
};

/// Sum_{j>=2} m_j lambda_j, exactly. The first entry of `m` rides the zero
/// eigenvalue and never contributes.
template <typename R>
R eigenvalue_of(const MultiIndex& m, const Matrix<R>& B) {
  R acc{};
  for (std::size_t j = 1; j < m.nvars(); ++j) {
    if (m[j] == 0) continue;
    acc += B.at(j - 1, j - 1) * R(static_cast<long>(m[j]));
  }
  return acc;
}

template <typename R>
R eigenvalue_of(const MultiIndex& m, const SystemSpec<R>& spec) {
  return eigenvalue_of(m, spec.B);
}

namespace system_detail {

template <typename R>
void check_structure(const SystemSpec<R>& spec) {
  const std::size_t k = spec.n - 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (!spec.B.at(i, j).is_zero())
        throw NotLowerTriangular(static_cast<int>(i + 1), static_cast<int>(j + 1));
  for (std::size_t i = 0; i < k; ++i)
    if (spec.B.at(i, i).is_zero()) throw ZeroEigenvalue(static_cast<int>(i + 1));

  auto check_order = [](const GradedSeries<R>& s, const char* what) {
    if (auto o = s.order(); o && *o < 2)
      throw InvalidSystem(std::string(what) + " has terms of degree < 2");
  };
  check_order(spec.f1, "f1");
  for (std::size_t i = 0; i < spec.f2.size(); ++i)
    check_order(spec.f2[i], "f2 component");

  if constexpr (RingOps<R>::parametric) {
    // Lemma-style families: the nonlinearity is sum_i t_i * X_i, so every
    // nonlinear coefficient is linear in t with zero constant term. (The
    // linear block B stays numeric.)
    auto check_param = [](const R& c, const char* what) {
      if (c.degree() > 1 || !c.constant_term().is_zero())
        throw InvalidSystem(std::string(what) +
                            ": nonlinear coefficients must be linear in t with zero "
                            "constant term, got '" +
                            c.str() + "'");
    };
    for (const auto& [d, h] : spec.f1.components())
      for (const auto& [m, c] : h.terms()) check_param(c, "f1");
    for (const auto& comp : spec.f2)
      for (const auto& [d, h] : comp.components())
        for (const auto& [m, c] : h.terms()) check_param(c, "f2");
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (!spec.B.at(i, j).is_constant())
          throw InvalidSystem("entries of B must not depend on t");
  }
}

}  // namespace system_detail

/// Checks the blanket assumptions and enumerates every m~ in Z_+^{n-1} with
/// 2 <= |m~| <= N against condition (2). Throws ResonanceViolation on an
/// exact zero; otherwise returns the certificate with the exact minimal
/// divisor magnitude and its witness.
template <typename R>
ResonanceCertificate validate(const SystemSpec<R>& spec) {
  system_detail::check_structure(spec);

  ResonanceCertificate cert;
  cert.n_checked = spec.trunc;
  bool have_min = false;
  const std::size_t k = spec.n - 1;
  for (int d = 2; d <= spec.trunc; ++d) {
    for_each_multi_index(k, d, [&](const MultiIndex& mt) {
      R value{};
      for (std::size_t j = 0; j < k; ++j)
        if (mt[j] != 0) value += spec.B.at(j, j) * R(static_cast<long>(mt[j]));
      if (value.is_zero()) {
        std::vector<int> witness(k);
        for (std::size_t j = 0; j < k; ++j) witness[j] = static_cast<int>(mt[j]);
        throw ResonanceViolation(std::move(witness));
      }
      Rational mag = RingOps<R>::divisor_magnitude(value);
      if (!have_min || mag < cert.min_magnitude) {
        have_min = true;
        cert.min_magnitude = mag;
        cert.min_divisor_text = RingOps<R>::str(value);
        cert.min_witness.assign(k, 0);
        for (std::size_t j = 0; j < k; ++j) cert.min_witness[j] = static_cast<int>(mt[j]);
      }
    });
  }
  return cert;
}

}  // namespace firstint

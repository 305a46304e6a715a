#include <doctest.h>

#include "firstint/reduction.hpp"
#include "test_util.hpp"

using namespace firstint;
using testutil::DensePoly;
using testutil::make_system;
using testutil::make_system_q;
using testutil::q_series;

namespace {

/// Exact inverse of the small lower-triangular block by Gauss-Jordan;
/// test-side route, independent of the engine's forward substitution.
testutil::DensePoly dense_zero(std::size_t nvars) {
  DensePoly p;
  p.nvars = nvars;
  return p;
}

std::vector<std::vector<Rational>> invert(const Matrix<Rational>& b) {
  const std::size_t k = b.size();
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(2 * k, Rational(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = b.at(i, j);
    a[i][k + i] = Rational(1);
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && a[piv][col].is_zero()) ++piv;
    REQUIRE(piv < k);
    std::swap(a[piv], a[col]);
    Rational inv = a[col][col].inverse();
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Rational f = a[r][col];
      for (std::size_t c = 0; c < 2 * k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<std::vector<Rational>> inv(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) inv[i][j] = a[i][k + j];
  return inv;
}

/// Whole-series Picard iteration phi <- -B^{-1} f2(x1, phi); each sweep
/// gains at least one degree, so N sweeps settle everything through N.
std::vector<DensePoly> picard_curve(const SystemSpec<Rational>& spec) {
  const std::size_t k = spec.n - 1;
  auto binv = invert(spec.B);
  std::vector<DensePoly> phi(k, dense_zero(spec.n));
  DensePoly x1 = DensePoly::from_series(GradedSeries<Rational>::variable(1, spec.n, 1));
  std::vector<DensePoly> f2;
  for (const auto& s : spec.f2) f2.push_back(DensePoly::from_series(s));

  for (int sweep = 0; sweep < spec.trunc; ++sweep) {
    std::vector<DensePoly> args{x1};
    for (const auto& p : phi) args.push_back(p);
    std::vector<DensePoly> rhs;
    for (std::size_t i = 0; i < k; ++i)
      rhs.push_back(DensePoly::substitute(f2[i], args, spec.trunc));
    for (std::size_t i = 0; i < k; ++i) {
      DensePoly acc = dense_zero(spec.n);
      for (std::size_t j = 0; j < k; ++j) acc = acc.plus(rhs[j].scaled(-binv[i][j]));
      phi[i] = acc;
    }
  }
  return phi;
}

}  // namespace

TEST_CASE("solve_implicit: zero nonlinearity gives the zero curve") {
  auto spec = make_system_q(3, 6, {"-1", "0", "2", "-3"}, "0", {"0", "0"});
  auto curve = solve_implicit(spec);
  for (const auto& p : curve.phi) CHECK(p.is_zero());
}

TEST_CASE("solve_implicit: quadratic forcing") {
  auto spec = make_system_q(2, 6, {"-1"}, "0", {"y1^2"});
  auto curve = solve_implicit(spec);
  CHECK(to_text(curve.phi[0]) == "y1^2");
  for (const auto& r : center_residual(spec, curve)) CHECK(r.is_zero());
}

TEST_CASE("solve_implicit: Catalan curve from x1^2 + x2^2") {
  auto spec = make_system_q(2, 8, {"-1"}, "0", {"y1^2 + y2^2"});
  auto curve = solve_implicit(spec);

  // independent oracle: fixed-point iteration phi <- x1^2 + phi^2
  DensePoly phi = dense_zero(2);
  DensePoly x1sq;
  x1sq.nvars = 2;
  x1sq.add({2, 0}, Rational(1));
  for (int it = 0; it < 8; ++it) phi = x1sq.plus(phi.times(phi, 8));
  CHECK(phi.equals_series(curve.phi[0]));

  CHECK(to_text(curve.phi[0]) == "y1^2 + y1^4 + 2 * y1^6 + 5 * y1^8");
  for (const auto& r : center_residual(spec, curve)) CHECK(r.is_zero());
}

TEST_CASE("solve_implicit: residual vanishes and Picard agrees on random systems") {
  testutil::Rng rng(60601);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t n = 3;
    const int N = 6;
    SystemSpec<Rational> spec;
    spec.n = n;
    spec.trunc = N;
    spec.B = Matrix<Rational>(n - 1);
    spec.B.at(0, 0) = testutil::random_nonzero_rational(rng);
    spec.B.at(1, 0) = testutil::random_rational(rng);
    spec.B.at(1, 1) = testutil::random_nonzero_rational(rng);
    spec.f1 = GradedSeries<Rational>(n, N);
    for (std::size_t i = 0; i + 1 < n; ++i)
      spec.f2.push_back(testutil::random_series_q(rng, n, 2, 4, N, 3));

    auto curve = solve_implicit(spec);
    for (const auto& r : center_residual(spec, curve)) CHECK(r.is_zero());
    for (const auto& p : curve.phi)
      if (auto o = p.order()) CHECK(*o >= 2);

    auto picard = picard_curve(spec);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(picard[i].equals_series(curve.phi[i]));
  }
}

TEST_CASE("nonisolated_check: the three spec verdicts") {
  // x1' = x1 x2 - x1^3, x2' = -x2 + x1^2: nonisolated through N
  auto good = make_system_q(2, 6, {"-1"}, "y1 y2 - y1^3", {"y1^2"});
  auto curve = solve_implicit(good);
  auto v = nonisolated_check(good, curve);
  CHECK(v.nonisolated);
  CHECK(v.degree == 6);

  // x1' = x1 x2, x2' = -x2 + x1^2: g = x1^3
  auto bad = make_system_q(2, 6, {"-1"}, "y1 y2", {"y1^2"});
  auto curve2 = solve_implicit(bad);
  auto v2 = nonisolated_check(bad, curve2);
  CHECK_FALSE(v2.nonisolated);
  CHECK(v2.degree == 3);
  CHECK(v2.witness == "1");

  // f1 == 0 is trivially nonisolated
  auto trivial = make_system_q(2, 6, {"-1"}, "0", {"y1^2 + y2^2"});
  auto v3 = nonisolated_check(trivial, solve_implicit(trivial));
  CHECK(v3.nonisolated);
}

TEST_CASE("nonisolated_check: parametric witness is a polynomial in t") {
  // g picks up the coefficient t1 at degree 3: isolated for generic t
  auto family = make_system<ParamPoly>(2, 5, {"-1"}, "(1) t1 * y1^3", {"(1) t2 * y1^2"}, 2);
  auto curve = solve_implicit(family);
  auto v = nonisolated_check(family, curve);
  CHECK_FALSE(v.nonisolated);
  CHECK(v.degree == 3);
  CHECK(v.witness == "(1) t1");
}

TEST_CASE("shift_and_factor: worked 2D example against the chain rule") {
  auto spec = make_system_q(2, 4, {"-1"}, "y1 y2 - y1^3", {"y1^2"});
  auto curve = solve_implicit(spec);
  REQUIRE(nonisolated_check(spec, curve).nonisolated);
  auto fs = shift_and_factor(spec, curve);

  CHECK(to_text(fs.F1[0]) == "y1");
  CHECK(to_text(fs.F2[0][0]) == "-2 * y1^2");

  // chain-rule oracle: build the shifted field densely and compare
  DensePoly f1 = DensePoly::from_series(spec.f1);
  DensePoly f2 = DensePoly::from_series(spec.f2[0]);
  DensePoly phi = DensePoly::from_series(curve.phi[0]);
  DensePoly x1 = DensePoly::from_series(GradedSeries<Rational>::variable(1, 2, 1));
  DensePoly y2 = DensePoly::from_series(GradedSeries<Rational>::variable(2, 2, 1));
  std::vector<DensePoly> shift{x1, y2.plus(phi)};

  DensePoly y1dot = DensePoly::substitute(f1, shift, 4);
  CHECK(y1dot.equals_series(reconstruct_f1(fs)));

  // y2' = B(y2 + phi) + f2(shift) - phi' * y1'; subtract B y2 for the
  // nonlinear part
  DensePoly y2dot = DensePoly::substitute(f2, shift, 4)
                        .plus(phi.scaled(Rational(-1)))
                        .plus(phi.partial(0).times(y1dot, 4).scaled(Rational(-1)));
  CHECK(y2dot.equals_series(reconstruct_f2_row(fs, 0)));
}

TEST_CASE("shift_and_factor: already factored input is read off directly") {
  // x1' = x1 x2, x2' = -x2 + x1 x2: phi = 0
  auto spec = make_system_q(2, 5, {"-1"}, "y1 y2", {"y1 y2"});
  auto curve = solve_implicit(spec);
  CHECK(curve.phi[0].is_zero());
  auto fs = shift_and_factor(spec, curve);
  CHECK(to_text(fs.F1[0]) == "y1");
  CHECK(to_text(fs.F2[0][0]) == "y1");
}

TEST_CASE("shift_and_factor: tie-break assigns to the smallest column") {
  // y1' = y2 y3 in n=3 goes to the y2 column as y3
  auto spec = make_system_q(3, 4, {"-1", "0", "0", "-2"}, "y2 y3", {"0", "0"});
  auto curve = solve_implicit(spec);
  auto fs = shift_and_factor(spec, curve);
  CHECK(to_text(fs.F1[0]) == "y3");
  CHECK(fs.F1[1].is_zero());
}

TEST_CASE("shift_and_factor: round trip through a known center curve") {
  // Un-shift a random factored system through a random curve psi: the
  // resulting input is nonisolated by construction, solve_implicit must
  // recover exactly psi, and the dense chain rule must reproduce the
  // factored field.
  testutil::Rng rng(777);
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t n = 3;
    const int N = 5;
    const std::size_t k = n - 1;

    Matrix<Rational> B(k);
    B.at(0, 0) = Rational(-1);
    B.at(1, 0) = Rational(1);
    B.at(1, 1) = Rational(-3);

    // random factored data: G1 = sum_j a_j y_{j+1}, G2_i likewise
    auto y_var = [&](std::size_t j) { return GradedSeries<Rational>::variable(j, n, N); };
    GradedSeries<Rational> g1(n, N);
    std::vector<GradedSeries<Rational>> g2(k, GradedSeries<Rational>(n, N));
    for (std::size_t j = 0; j < k; ++j) {
      g1 = g1.plus(testutil::random_series_q(rng, n, 1, 2, N, 2).times(y_var(j + 2), N));
      for (std::size_t i = 0; i < k; ++i)
        g2[i] =
            g2[i].plus(testutil::random_series_q(rng, n, 1, 2, N, 2).times(y_var(j + 2), N));
    }

    // random curve psi_j(x1), order >= 2
    std::vector<GradedSeries<Rational>> psi;
    for (std::size_t j = 0; j < k; ++j) {
      GradedSeries<Rational> p(n, N);
      MultiIndex m2(n), m3(n);
      m2[0] = 2;
      m3[0] = 3;
      p.accumulate(m2, testutil::random_rational(rng));
      p.accumulate(m3, testutil::random_rational(rng));
      psi.push_back(std::move(p));
    }

    // x2 = y2 + psi  =>  substitute y2 = x2 - psi into the factored field
    std::vector<GradedSeries<Rational>> unshift{y_var(1)};
    for (std::size_t j = 0; j < k; ++j) unshift.push_back(y_var(j + 2).minus(psi[j]));

    SystemSpec<Rational> spec;
    spec.n = n;
    spec.trunc = N;
    spec.B = B;
    spec.f1 = g1.substitute(unshift, N);
    for (std::size_t i = 0; i < k; ++i) {
      GradedSeries<Rational> fi = g2[i].substitute(unshift, N);
      for (std::size_t j = 0; j < k; ++j)
        fi = fi.plus(psi[j].scaled(Rational(0) - B.at(i, j)));
      fi = fi.plus(psi[i].partial(1).times(spec.f1, N));
      spec.f2.push_back(std::move(fi));
    }

    auto curve = solve_implicit(spec);
    for (std::size_t j = 0; j < k; ++j) CHECK(curve.phi[j] == psi[j].truncated(N));
    REQUIRE(nonisolated_check(spec, curve).nonisolated);
    auto fs = shift_and_factor(spec, curve);

    // dense chain-rule route from the unshifted input back to the factored
    // field
    DensePoly x1 = DensePoly::from_series(y_var(1));
    std::vector<DensePoly> shift{x1};
    for (std::size_t j = 0; j < k; ++j)
      shift.push_back(
          DensePoly::from_series(y_var(j + 2)).plus(DensePoly::from_series(curve.phi[j])));
    DensePoly y1dot = DensePoly::substitute(DensePoly::from_series(spec.f1), shift, N);
    CHECK(y1dot.equals_series(reconstruct_f1(fs)));
    for (std::size_t i = 0; i < k; ++i) {
      DensePoly acc = DensePoly::substitute(DensePoly::from_series(spec.f2[i]), shift, N);
      for (std::size_t j = 0; j < k; ++j)
        acc = acc.plus(DensePoly::from_series(curve.phi[j]).scaled(B.at(i, j)));
      acc = acc.plus(DensePoly::from_series(curve.phi[i])
                         .partial(0)
                         .times(y1dot, N)
                         .scaled(Rational(-1)));
      CHECK(acc.equals_series(reconstruct_f2_row(fs, i)));
    }
  }
}

TEST_CASE("shift_and_factor: isolated input raises NonVanishingOnCenter") {
  auto spec = make_system_q(2, 6, {"-1"}, "y1 y2", {"y1^2"});
  auto curve = solve_implicit(spec);
  CHECK_THROWS_AS(shift_and_factor(spec, curve), NonVanishingOnCenter);
}

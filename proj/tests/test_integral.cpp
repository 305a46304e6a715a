#include <doctest.h>

#include "firstint/integral.hpp"
#include "firstint/specialize.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace firstint;
using testutil::make_factored;

TEST_CASE("rhs_at_degree: one-dimensional block, degrees one and two") {
  // F1 = (a y1), F2 = (b y1) with a = 2/3, b = -1/5
  auto fs = make_factored<Rational>(2, 4, {"-1"}, {"2/3 * y1"}, {"-1/5 * y1"});
  auto f = field_components(fs);

  GradedSeries<Rational> h(2, 4);
  h.set_component(HomoPoly<Rational>::variable(1, 2));
  auto rhs1 = rhs_at_degree(1, f, h);
  CHECK(to_text(rhs1) == "-2/3 * y1 y2");

  // H2 = a y1 y2; rhs at s=2 is -ab y1^2 y2 - a^2 y1 y2^2
  h.set_component(testutil::q_homo("2/3 * y1 y2", 2, 2));
  auto rhs2 = rhs_at_degree(2, f, h);
  CHECK(to_text(rhs2) == "2/15 * y1^2 y2 - 4/9 * y1 y2^2");

  // linear system: rhs vanishes for every s
  auto lin = make_factored<Rational>(2, 4, {"-1"}, {"0"}, {"0"});
  auto flin = field_components(lin);
  for (int s = 1; s <= 3; ++s) CHECK(rhs_at_degree(s, flin, h).is_zero());
}

TEST_CASE("compute_first_integral: the 2D benchmark to degree 3") {
  auto fs = make_factored<Rational>(2, 3, {"-1"}, {"y1"}, {"y1"});
  auto h = compute_first_integral(fs);
  CHECK(to_text(h.components) == "y1 + y1 y2 + y1^2 y2 + 1/2 * y1 y2^2");
  CHECK(h.components == oracle::oracle_first_integral(fs));

  auto lin = make_factored<Rational>(2, 5, {"-1"}, {"0"}, {"0"});
  CHECK(to_text(compute_first_integral(lin).components) == "y1");
}

TEST_CASE("compute_first_integral: parametric example and its oracle") {
  auto fs = make_factored<ParamPoly>(2, 3, {"-1"}, {"(1) t1 * y1"}, {"(1) t2 * y1"}, 2);
  auto h = compute_first_integral(fs);

  CHECK(to_text(h.components.component(2)) == "(1) t1 * y1 y2");
  auto h3 = h.components.component(3);
  CHECK(h3.coeff(MultiIndex{2, 1}) == ParamPoly::parse("(1) t1 t2", 2));
  CHECK(h3.coeff(MultiIndex{1, 2}) == ParamPoly::parse("(1/2) t1^2", 2));

  CHECK(h.components == oracle::oracle_first_integral(fs));

  auto rep = verify_param_structure(h);
  CHECK(rep.ok);
  CHECK(rep.violations.empty());
}

TEST_CASE("lie_derivative: zero on integrals, visible on non-integrals") {
  auto lin = make_factored<Rational>(2, 4, {"-1"}, {"0"}, {"0"});
  GradedSeries<Rational> y1(2, 4);
  y1.set_component(HomoPoly<Rational>::variable(1, 2));
  CHECK(lie_derivative(y1, lin, 4).is_zero());

  GradedSeries<Rational> y2(2, 4);
  y2.set_component(HomoPoly<Rational>::variable(2, 2));
  auto r = lie_derivative(y2, lin, 4);
  CHECK(to_text(r) == "-y2");

  // the computed H annihilates through N and generally not at N+1
  auto fs = make_factored<Rational>(2, 6, {"-1"}, {"y1"}, {"y1"});
  auto h = compute_first_integral(fs);
  auto resid = lie_derivative(h.components, fs, 8);
  for (const auto& [d, comp] : resid.components()) CHECK(d > 6);
  CHECK_FALSE(resid.component(7).is_zero());
  CHECK(h.residual_tail.component(7) == resid.component(7));
}

TEST_CASE("exact annihilation on random factored systems") {
  testutil::Rng rng(333);
  for (int rep = 0; rep < 10; ++rep) {
    std::uniform_int_distribution<int> nd(2, 4);
    const std::size_t n = static_cast<std::size_t>(nd(rng));
    const int N = 6;
    auto fs = testutil::random_factored_q(rng, n, N);
    auto h = compute_first_integral(fs);  // internal residual check is exact
    CHECK(h.components.component(1) == HomoPoly<Rational>::variable(1, n));
    for (const auto& [d, comp] : h.components.components())
      if (d >= 2) CHECK_FALSE(comp.has_pure_first_term());
  }
}

TEST_CASE("oracle equivalence on random systems (n <= 3, N <= 6)") {
  testutil::Rng rng(5891);
  for (int rep = 0; rep < 6; ++rep) {
    std::uniform_int_distribution<int> nd(2, 3), Nd(4, 6);
    auto fs = testutil::random_factored_q(rng, static_cast<std::size_t>(nd(rng)), Nd(rng));
    auto h = compute_first_integral(fs);
    CHECK(h.components == oracle::oracle_first_integral(fs));
  }
}

TEST_CASE("parametric mode: specialization commutes, structure holds") {
  testutil::Rng rng(24601);
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t n = 2 + (rep % 2);
    const std::size_t m = 1 + (rep % 3);
    const int N = 5;
    auto family = testutil::random_factored_t(rng, n, m, N);
    auto h = compute_first_integral(family);

    auto rep_struct = verify_param_structure(h);
    CHECK(rep_struct.ok);

    for (int pt = 0; pt < 3; ++pt) {
      std::vector<Rational> t;
      for (std::size_t k = 0; k < m; ++k) t.push_back(testutil::random_rational(rng, 3, 3));
      auto specialized_h = specialize(h.components, t);
      auto numeric_h = compute_first_integral(specialize(family, t));
      CHECK(specialized_h == numeric_h.components);
    }
  }
}

TEST_CASE("determinism: identical runs produce identical canonical output") {
  testutil::Rng rng(8080);
  auto fs = testutil::random_factored_q(rng, 3, 6);
  auto a = compute_first_integral(fs);
  auto b = compute_first_integral(fs);
  CHECK(to_text(a.components) == to_text(b.components));
  CHECK(a.divisors.entries.size() == b.divisors.entries.size());
  for (std::size_t i = 0; i < a.divisors.entries.size(); ++i) {
    CHECK(a.divisors.entries[i].mtilde == b.divisors.entries[i].mtilde);
    CHECK(a.divisors.entries[i].value == b.divisors.entries[i].value);
  }
}

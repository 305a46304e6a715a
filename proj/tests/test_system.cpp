#include <doctest.h>

#include "firstint/io_json.hpp"
#include "firstint/system.hpp"
#include "test_util.hpp"

using namespace firstint;
using testutil::make_system;
using testutil::make_system_q;

TEST_CASE("validate: single negative eigenvalue") {
  auto spec = make_system_q(2, 4, {"-1"}, "0", {"0"});
  auto cert = validate(spec);
  CHECK(cert.n_checked == 4);
  // <m~, lambda~> over |m~| in [2,4] takes values -2,-3,-4
  CHECK(cert.min_magnitude.str() == "2");
  CHECK(cert.min_witness == std::vector<int>{2});
  CHECK(cert.min_divisor_text == "-2");
}

TEST_CASE("validate: resonant pairs are rejected with a witness") {
  auto spec = make_system_q(3, 2, {"1", "0", "0", "-1"}, "0", {"0", "0"});
  CHECK_THROWS_WITH_AS(validate(spec), doctest::Contains("(1,1)"), ResonanceViolation);

  auto spec2 = make_system_q(3, 3, {"1", "0", "0", "-2"}, "0", {"0", "0"});
  try {
    validate(spec2);
    FAIL("expected ResonanceViolation");
  } catch (const ResonanceViolation& e) {
    CHECK(e.mtilde() == std::vector<int>{2, 1});
  }
}

TEST_CASE("validate: structural errors") {
  auto upper = make_system_q(3, 3, {"1", "1", "0", "-2"}, "0", {"0", "0"});
  CHECK_THROWS_AS(validate(upper), NotLowerTriangular);

  auto zero = make_system_q(3, 3, {"0", "0", "1", "-2"}, "0", {"0", "0"});
  CHECK_THROWS_AS(validate(zero), ZeroEigenvalue);

  auto low = make_system_q(2, 3, {"-1"}, "y2", {"0"});
  CHECK_THROWS_AS(validate(low), InvalidSystem);
}

TEST_CASE("validate: Gaussian spectrum uses the exact modulus squared") {
  auto res = make_system<GaussianRational>(3, 3, {"0+1 i", "0", "0", "0-2 i"}, "0",
                                           {"0", "0"});
  CHECK_THROWS_AS(validate(res), ResonanceViolation);  // 2i - 2i = 0 at (2,1)

  auto ok = make_system<GaussianRational>(3, 3, {"0+1 i", "0", "1", "-2"}, "0", {"0", "0"});
  auto cert = validate(ok);
  // smallest |m2*i - 2*m3|^2 over 2 <= m2+m3 <= 3 is |2i|^2 = 4
  CHECK(cert.min_magnitude.str() == "4");
  CHECK(cert.min_witness == std::vector<int>{2, 0});
}

TEST_CASE("validate: parametric families must be linear in t without constants") {
  auto good = make_system<ParamPoly>(2, 4, {"-1"}, "(1) t1 * y1 y2", {"(1) t2 * y1^2"}, 2);
  CHECK_NOTHROW(validate(good));

  auto affine =
      make_system<ParamPoly>(2, 4, {"-1"}, "((1) t1 + 1) * y1 y2", {"(1) t2 * y1^2"}, 2);
  CHECK_THROWS_AS(validate(affine), InvalidSystem);

  auto quadratic =
      make_system<ParamPoly>(2, 4, {"-1"}, "(1) t1^2 * y1 y2", {"(1) t2 * y1^2"}, 2);
  CHECK_THROWS_AS(validate(quadratic), InvalidSystem);
}

TEST_CASE("eigenvalue_of: spec examples and linearity") {
  auto spec = make_system_q(3, 4, {"-1", "0", "0", "-2"}, "0", {"0", "0"});

  MultiIndex pure{5, 0, 0};
  CHECK(eigenvalue_of(pure, spec).is_zero());

  MultiIndex m{0, 1, 1};
  CHECK(eigenvalue_of(m, spec).str() == "-3");

  auto spec2 = make_system_q(2, 4, {"-1"}, "0", {"0"});
  MultiIndex m2{1, 2};
  CHECK(eigenvalue_of(m2, spec2).str() == "-2");

  testutil::Rng rng(31);
  std::uniform_int_distribution<int> e(0, 4);
  for (int rep = 0; rep < 40; ++rep) {
    MultiIndex a{static_cast<std::uint32_t>(e(rng)), static_cast<std::uint32_t>(e(rng)),
                 static_cast<std::uint32_t>(e(rng))};
    MultiIndex b{static_cast<std::uint32_t>(e(rng)), static_cast<std::uint32_t>(e(rng)),
                 static_cast<std::uint32_t>(e(rng))};
    CHECK(eigenvalue_of(a + b, spec) == eigenvalue_of(a, spec) + eigenvalue_of(b, spec));
  }
}

TEST_CASE("eigenvalue_of vanishes only on pure y1 powers under a certificate") {
  auto spec = make_system_q(3, 6, {"2", "0", "1", "-5"}, "0", {"0", "0"});
  REQUIRE_NOTHROW(validate(spec));
  for (int d = 0; d <= 6; ++d) {
    for_each_multi_index(3, d, [&](const MultiIndex& m) {
      bool zero = eigenvalue_of(m, spec).is_zero();
      CHECK(zero == m.is_pure_first());
    });
  }
}

TEST_CASE("json input: loading, term-order independence, errors") {
  const char* doc = R"({
    "n": 2, "ring": "Q", "N": 4, "B": [["-1"]],
    "f1": [{"coeff": "1", "exp": [1, 1]}, {"coeff": "-1", "exp": [3, 0]}],
    "f2": [[{"coeff": "1", "exp": [2, 0]}]]
  })";
  auto parsed = parse_system_document(doc);
  REQUIRE(parsed.ring == RingId::Q);
  auto spec = system_from_json<Rational>(parsed.document);
  CHECK(spec.n == 2);
  CHECK(spec.trunc == 4);
  CHECK(to_text(spec.f1) == "y1 y2 - y1^3");
  CHECK(to_text(spec.f2[0]) == "y1^2");

  // identical system, shuffled term order -> identical everything
  const char* doc2 = R"({
    "n": 2, "ring": "Q", "N": 4, "B": [["-1"]],
    "f1": [{"coeff": "-1", "exp": [3, 0]}, {"coeff": "1", "exp": [1, 1]}],
    "f2": [[{"coeff": "1", "exp": [2, 0]}]]
  })";
  auto spec2 = system_from_json<Rational>(parse_system_document(doc2).document);
  CHECK(spec.f1 == spec2.f1);
  auto c1 = validate(spec);
  auto c2 = validate(spec2);
  CHECK(c1.min_magnitude == c2.min_magnitude);
  CHECK(c1.min_witness == c2.min_witness);

  CHECK_THROWS_AS(parse_system_document("{ not json"), ParseError);
  CHECK_THROWS_AS(parse_system_document(R"({"n": 2})"), InvalidSystem);
  CHECK_THROWS_AS(parse_system_document(R"({"n":2,"ring":"R","N":4,"B":[],"f1":[],"f2":[]})"),
                  InvalidSystem);

  // terms above N are dropped and counted
  const char* doc3 = R"({
    "n": 2, "ring": "Q", "N": 3, "B": [["-1"]],
    "f1": [{"coeff": "1", "exp": [5, 0]}],
    "f2": [[]]
  })";
  std::size_t dropped = 0;
  auto spec3 = system_from_json<Rational>(parse_system_document(doc3).document, &dropped);
  CHECK(dropped == 1);
  CHECK(spec3.f1.is_zero());
}

TEST_CASE("json round-trip of parametric series") {
  auto f = parse_series_text<ParamPoly>("((1/2) t1 + (1/3) t2) * y1 y2", 2, 2, 4);
  json arr = series_to_json(f);
  CHECK(arr.size() == 2);  // one entry per t-monomial
  auto back = series_from_json<ParamPoly>(arr, 2, 2, 4, "f");
  CHECK(back == f);
}

#include "doctest.h"
#include "slopecert/errors.hpp"
#include "slopecert/positivity.hpp"
#include "support.hpp"

using namespace slopecert;

TEST_CASE("ample cone of F_n") {
  CHECK(is_ample_hirzebruch(2, 1, 3));
  CHECK_FALSE(is_ample_hirzebruch(2, 1, 2));
  CHECK(is_ample_hirzebruch(0, 1, 1));
  CHECK_FALSE(is_ample_hirzebruch(1, 0, 1));
  CHECK_FALSE(is_ample_hirzebruch(1, -1, -3));
}

TEST_CASE("Seshadri constant along Z") {
  CHECK(seshadri_at_Z(1, 1, 2) == 1);
  CHECK(seshadri_at_Z(3, 2, 7) == 2);
  CHECK_THROWS_AS(seshadri_at_Z(1, 1, 1), DomainError);
}

TEST_CASE("tracked positivity examples") {
  const auto f1 = parse_presentation("F(1)");
  const DivisorClass l(f1.lattice(), {Rational(1), Rational(2)});
  CHECK(tracked_positivity(f1, l).verdict == PositivityVerdict::ExactAmple);

  const auto blown = parse_presentation("F(1); blowup generic");
  const DivisorClass eps(blown.lattice(), {Rational(1), Rational(2), make_rational(-1, 4)});
  const auto report = tracked_positivity(blown, eps);
  CHECK(report.verdict == PositivityVerdict::TrackedPositive);
  CHECK(report.self_intersection == 3 - make_rational(1, 16));
  bool saw_e = false;
  for (const auto& c : report.tracked_checks) {
    if (c.curve == CurveTag::exceptional(1)) {
      CHECK(c.degree == make_rational(1, 4));
      saw_e = true;
    }
  }
  CHECK(saw_e);

  const DivisorClass big(blown.lattice(), {Rational(1), Rational(2), Rational(-2)});
  CHECK(tracked_positivity(blown, big).verdict == PositivityVerdict::Fail);
}

TEST_CASE("Seshadri interval is strict") {
  CHECK(seshadri_interval_after_blowup(make_rational(9, 10), 1));
  CHECK_FALSE(seshadri_interval_after_blowup(1, 1));
  CHECK_FALSE(seshadri_interval_after_blowup(make_rational(1, 2), make_rational(1, 2)));
}

TEST_CASE("verdict names round trip") {
  for (auto v : {PositivityVerdict::ExactAmple, PositivityVerdict::TrackedPositive, PositivityVerdict::Fail}) {
    CHECK(parse_positivity_verdict(to_string(v)) == v);
  }
  CHECK_THROWS(parse_positivity_verdict("Ample"));
}

TEST_CASE("property: tracked verdict agrees with the ample cone on F_n") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const unsigned n = static_cast<unsigned>(testsupport::uniform(rng, 0, 6));
    const auto p = SurfacePresentation(Base::hirzebruch(n), {});
    const Rational a = testsupport::random_rational(rng, 6, 3);
    const Rational b = testsupport::random_rational(rng, 20, 3);
    const auto report = tracked_positivity(p, DivisorClass(p.lattice(), {a, b}));
    CHECK((report.verdict == PositivityVerdict::ExactAmple) == is_ample_hirzebruch(n, a, b));
  }
}

TEST_CASE("property: scaling") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 200; ++i) {
    const unsigned n = static_cast<unsigned>(testsupport::uniform(rng, 0, 6));
    const Rational a = testsupport::random_rational(rng, 6, 3);
    const Rational b = testsupport::random_rational(rng, 20, 3);
    const Rational c = testsupport::random_positive(rng, 9, 7);
    CHECK(is_ample_hirzebruch(n, a, b) == is_ample_hirzebruch(n, c * a, c * b));
    if (is_ample_hirzebruch(n, a, b)) {
      CHECK(seshadri_at_Z(n, c * a, c * b) == c * seshadri_at_Z(n, a, b));
    }
  }
}

// Shrinking eps raises L^2 and every margin away from E_i; L.E_i = eps itself
// shrinks but stays positive.
TEST_CASE("property: shrinking epsilon keeps tracked checks passing") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 200; ++i) {
    const unsigned n = static_cast<unsigned>(testsupport::uniform(rng, 1, 5));
    const auto p = SurfacePresentation(Base::hirzebruch(n), {BlowupStep{Locus::OffZ}});
    const auto [a, b] = testsupport::random_ample(rng, n);
    const Rational eps = testsupport::random_fraction_of(rng, a / 4, 9);
    const Rational smaller = testsupport::random_fraction_of(rng, eps, 9);
    if (smaller == eps) continue;
    const auto big = tracked_positivity(p, DivisorClass(p.lattice(), {a, b, -eps}));
    const auto small = tracked_positivity(p, DivisorClass(p.lattice(), {a, b, -smaller}));
    REQUIRE(big.passed());
    CHECK(small.passed());
    CHECK(small.self_intersection > big.self_intersection);
    REQUIRE(small.tracked_checks.size() == big.tracked_checks.size());
    for (std::size_t k = 0; k < big.tracked_checks.size(); ++k) {
      const auto& before = big.tracked_checks[k];
      const auto& after = small.tracked_checks[k];
      if (before.curve == CurveTag::exceptional(1)) {
        CHECK(after.degree == smaller);
      } else {
        CHECK(after.degree >= before.degree);
      }
    }
  }
}

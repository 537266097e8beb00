#include "doctest.h"
#include "slopecert/errors.hpp"
#include "slopecert/futaki.hpp"
#include "support.hpp"

using namespace slopecert;

namespace {

SlopeInput f1_input() { return SlopeInput::hirzebruch(1, 1, 2); }

}  // namespace

TEST_CASE("slope") {
  const auto f1 = parse_presentation("F(1)");
  CHECK(slope(f1, DivisorClass(f1.lattice(), {Rational(1), Rational(2)})) == make_rational(5, 3));
  const auto p2 = parse_presentation("P2");
  CHECK(slope(p2, DivisorClass(p2.lattice(), {Rational(1)})) == 3);
  const auto f0 = parse_presentation("F(0)");
  CHECK_THROWS_AS(slope(f0, DivisorClass(f0.lattice(), {Rational(1), Rational(0)})), DomainError);
}

TEST_CASE("slope input on F_1") {
  const auto in = f1_input();
  CHECK(in.l_dot_z == 1);
  CHECK(in.z_squared == -1);
  CHECK(in.genus == 0);
  CHECK(in.nu == make_rational(5, 3));
  CHECK(in.seshadri == 1);
}

TEST_CASE("df_slope examples") {
  CHECK(df_slope(f1_input(), make_rational(1, 2)) == make_rational(19, 36));
  CHECK(df_slope(f1_input(), make_rational(9, 10)) == make_rational(-9, 100));
  CHECK(df_slope(SlopeInput::hirzebruch(0, 1, 1), make_rational(1, 2)) == make_rational(1, 2));
  CHECK_THROWS_AS(df_slope(f1_input(), 0), DomainError);
  CHECK_THROWS_AS(df_slope(f1_input(), make_rational(11, 10)), DomainError);
  CHECK(df_slope(f1_input(), 1) == make_rational(-4, 9));  // formal endpoint
}

TEST_CASE("total-space oracle examples") {
  const auto model = TestConfigModel::from_slope_input(f1_input());
  const TestConfigModel::Vector l{Rational(1), Rational(0), Rational(-1)};
  CHECK(model.triple(l, l, l) == -4);
  CHECK(df_total_space_oracle(model, make_rational(9, 10)) == make_rational(-9, 100));
  CHECK(df_total_space_oracle(model, 0) == 0);
  CHECK_THROWS_AS(df_total_space_oracle(model, 2), DomainError);
}

TEST_CASE("oracle from the surface lattice agrees with adjunction route") {
  const auto p = parse_presentation("F(3); blowup generic");
  const DivisorClass l(p.lattice(), {Rational(1), Rational(4), make_rational(-1, 8)});
  const auto* z = p.z_section();
  const auto a = TestConfigModel::from_surface(p, l, *z, 1);
  const auto b = TestConfigModel::from_slope_input(SlopeInput::from_surface(p, l, *z, 1));
  for (const Rational& lambda : {make_rational(1, 3), make_rational(7, 8), Rational(1)}) {
    CHECK(df_total_space_oracle(a, lambda) == df_total_space_oracle(b, lambda));
  }
}

TEST_CASE("endpoint closed form") {
  CHECK(hirzebruch_endpoint_df(1, 1, 2) == make_rational(-4, 9));
  CHECK(hirzebruch_endpoint_df(0, 3, 5) == 0);
  CHECK(hirzebruch_endpoint_df(2, 1, 3) == -1);
  CHECK_THROWS_AS(hirzebruch_endpoint_df(2, 1, 2), DomainError);
}

TEST_CASE("destabilizing lambda search") {
  const auto hit = find_destabilizing_lambda(f1_input());
  REQUIRE(hit.destabilizer);
  CHECK(hit.destabilizer->df < 0);
  CHECK(hit.destabilizer->lambda == make_rational(7, 8));
  CHECK(hit.destabilizer->df == df_slope(f1_input(), hit.destabilizer->lambda));

  const auto quadric = find_destabilizing_lambda(SlopeInput::hirzebruch(0, 2, 3));
  CHECK_FALSE(quadric.destabilizer);
  CHECK(quadric.nonnegative_on_interval);

  const SlopeInput flat{0, 0, 0, 1, 1};
  const auto none = find_destabilizing_lambda(flat);
  CHECK_FALSE(none.destabilizer);
  CHECK(none.nonnegative_on_interval);
}

TEST_CASE("search finds a dip missed by the dyadic samples") {
  // DF = lambda (x - 3/10)(x - 9/25): negative only on (3/10, 9/25).
  const SlopeInput in{make_rational(27, 500), make_rational(81, 1330), 0, make_rational(665, 27), 1};
  const Polynomial expected = Polynomial({0, 1}) * Polynomial({make_rational(-3, 10), 1}) *
                              Polynomial({make_rational(-9, 25), 1});
  CHECK(df_polynomial(in) == expected);
  for (unsigned j = 1; j <= 4; ++j) CHECK(df_slope(in, 1 - inverse_power_of_two(j)) > 0);
  const auto hit = find_destabilizing_lambda(in, 4);
  REQUIRE(hit.destabilizer);
  CHECK(hit.destabilizer->lambda > make_rational(3, 10));
  CHECK(hit.destabilizer->lambda < make_rational(9, 25));
  CHECK(hit.destabilizer->df == df_slope(in, hit.destabilizer->lambda));
}

TEST_CASE("property: oracle equivalence") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    const unsigned n = static_cast<unsigned>(testsupport::uniform(rng, 0, 6));
    const auto [a, b] = testsupport::random_ample(rng, n);
    const auto in = SlopeInput::hirzebruch(n, a, b);
    const Rational lambda = testsupport::random_fraction_of(rng, a, 50);
    CHECK(df_total_space_oracle(TestConfigModel::from_slope_input(in), lambda) ==
          df_slope(in, lambda));
    CHECK(in.nu == testsupport::hirzebruch_slope(n, a, b));
  }
}

TEST_CASE("property: endpoint identity and sign") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const unsigned n = static_cast<unsigned>(testsupport::uniform(rng, 0, 6));
    const auto [a, b] = testsupport::random_ample(rng, n);
    const Rational end = df_slope(SlopeInput::hirzebruch(n, a, b), a);
    CHECK(end == hirzebruch_endpoint_df(n, a, b));
    CHECK(end == testsupport::endpoint_closed_form(n, a, b));
    if (n == 0) {
      CHECK(end == 0);
    } else {
      CHECK(end < 0);
    }
  }
}

TEST_CASE("property: scaling covariance") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 300; ++i) {
    const unsigned n = static_cast<unsigned>(testsupport::uniform(rng, 0, 6));
    const auto [a, b] = testsupport::random_ample(rng, n);
    const Rational c = testsupport::random_positive(rng, 9, 7);
    const Rational lambda = testsupport::random_fraction_of(rng, a, 40);
    const Rational base = df_slope(SlopeInput::hirzebruch(n, a, b), lambda);
    const Rational scaled = df_slope(SlopeInput::hirzebruch(n, c * a, c * b), c * lambda);
    CHECK(scaled == c * c * base);
  }
}

TEST_CASE("property: quadric never destabilizes") {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 200; ++i) {
    const auto [a, b] = testsupport::random_ample(rng, 0);
    const auto in = SlopeInput::hirzebruch(0, a, b);
    const Rational lambda = testsupport::random_fraction_of(rng, a, 60);
    CHECK(df_slope(in, lambda) == testsupport::quadric_df(a, b, lambda));
    if (lambda < a) CHECK(df_slope(in, lambda) > 0);
    CHECK_FALSE(find_destabilizing_lambda(in, 8).destabilizer);
  }
}

TEST_CASE("property: search result is sound and complete on F_n, n >= 1") {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 200; ++i) {
    const unsigned n = static_cast<unsigned>(testsupport::uniform(rng, 1, 6));
    const auto [a, b] = testsupport::random_ample(rng, n);
    const auto in = SlopeInput::hirzebruch(n, a, b);
    const auto hit = find_destabilizing_lambda(in);
    REQUIRE(hit.destabilizer);
    CHECK(hit.destabilizer->lambda > 0);
    CHECK(hit.destabilizer->lambda < a);
    CHECK(hit.destabilizer->df < 0);
  }
}

TEST_CASE("property: nonnegativity claims hold on random slope inputs") {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 200; ++i) {
    SlopeInput in{testsupport::random_rational(rng, 5, 3), testsupport::random_rational(rng, 5, 2),
                  static_cast<unsigned>(testsupport::uniform(rng, 0, 2)),
                  testsupport::random_positive(rng, 6, 5), testsupport::random_positive(rng, 4, 3)};
    const auto result = find_destabilizing_lambda(in, 6);
    if (result.destabilizer) {
      CHECK(result.destabilizer->df < 0);
      CHECK(result.destabilizer->df == df_slope(in, result.destabilizer->lambda));
    } else {
      REQUIRE(result.nonnegative_on_interval);
      for (int k = 1; k < 64; ++k) {
        CHECK(df_slope(in, in.seshadri * make_rational(k, 64)) >= 0);
      }
    }
  }
}

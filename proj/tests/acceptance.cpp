// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "slopecert/autgroup.hpp"
#include "slopecert/cli.hpp"
#include "slopecert/destabilize.hpp"
#include "slopecert/futaki.hpp"
#include "slopecert/positivity.hpp"
#include "support.hpp"

using namespace slopecert;
using testsupport::uniform;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.ok && budget_seconds > 0 && elapsed >= budget_seconds) {
    out.ok = false;
    std::ostringstream s;
    s << "over time budget " << budget_seconds << "s";
    out.detail = s.str();
  }
  std::printf("%s criterion %d: %s [%.3fs]%s%s\n", out.ok ? "PASS" : "FAIL", id, name, elapsed,
              out.ok ? "" : " -- ", out.detail.c_str());
  if (!out.ok) ++failures;
}

Outcome endpoint_closed_form() {
  Outcome o;
  std::mt19937_64 rng(1001);
  for (unsigned n = 1; n <= 6; ++n) {
    for (int i = 0; i < 50; ++i) {
      const Rational a = uniform(rng, 1, 20);
      const Rational b = n * a + uniform(rng, 1, 30);
      const Rational value = df_slope(SlopeInput::hirzebruch(n, a, b), a);
      o.require(value == testsupport::endpoint_closed_form(n, a, b),
                "closed form mismatch at n=" + std::to_string(n));
      o.require(value < 0, "endpoint DF not negative at n=" + std::to_string(n));
    }
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(1002);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<unsigned>(uniform(rng, 0, 6));
    const auto [a, b] = testsupport::random_ample(rng, n);
    const Rational lambda = testsupport::random_fraction_of(rng, a, 1000);
    const auto in = SlopeInput::hirzebruch(n, a, b);
    o.require(df_total_space_oracle(TestConfigModel::from_slope_input(in), lambda) ==
                  df_slope(in, lambda),
              "oracle and closed form differ");
  }
  return o;
}

Outcome quadric() {
  Outcome o;
  std::mt19937_64 rng(1003);
  for (int i = 0; i < 50; ++i) {
    const auto [a, b] = testsupport::random_ample(rng, 0);
    const auto in = SlopeInput::hirzebruch(0, a, b);
    for (int k = 0; k < 100; ++k) {
      Rational lambda = a * make_rational(uniform(rng, 1, 9999), 10000);
      const Rational df = df_slope(in, lambda);
      o.require(df == testsupport::quadric_df(a, b, lambda), "simplification mismatch");
      o.require(df > 0, "DF not positive on (0, a)");
    }
  }
  return o;
}

Outcome pipeline() {
  Outcome o;
  std::mt19937_64 rng(1004);
  std::vector<std::string> corpus{"P2", "F(0)"};
  while (corpus.size() < 100) {
    const bool p2 = uniform(rng, 0, 6) == 0;
    std::string text = p2 ? "P2" : "F(" + std::to_string(uniform(rng, 0, 5)) + ")";
    const long steps = uniform(rng, 0, 8);
    for (long s = 0; s < steps; ++s) {
      const bool on_z = (!p2 || s > 0) && uniform(rng, 0, 1) == 1;
      text += on_z ? "; blowup onZ" : "; blowup generic";
    }
    corpus.push_back(text);
  }
  for (const auto& text : corpus) {
    const auto p = parse_presentation(text);
    const auto verdict = destabilize(p);
    if (p.is_minimal_polystable()) {
      o.require(std::holds_alternative<MinimalPolystable>(verdict), text + " not polystable");
      std::ostringstream out, err;
      o.require(cli::run({"destabilize", text}, out, err) == cli::kMinimalPolystable,
                text + " exit code");
      continue;
    }
    o.require(std::holds_alternative<Certificate>(verdict), text + " not destabilized");
    if (!o.ok) break;
    const auto& c = std::get<Certificate>(verdict);
    const auto report = verify(load(emit(c)));
    o.require(report.accepted, text + " rejected at " + report.failed_check);
  }
  return o;
}

Outcome tamper() {
  Outcome o;
  const auto c = std::get<Certificate>(destabilize(parse_presentation("F(2); blowup generic; blowup onZ")));

  auto df = c;
  df.df_value = -df.df_value;
  o.require(verify(df).failed_check == "df-replay", "df sign flip");

  const auto surface = parse_presentation(c.normalized_presentation);
  for (std::size_t i = 0; i < c.epsilon_chain.size(); ++i) {
    auto eps = c;
    while (true) {
      eps.epsilon_chain[i] *= 2;
      auto coeffs = eps.polarization;
      coeffs[2 + i] = -eps.epsilon_chain[i];
      if (!tracked_positivity(surface, DivisorClass(surface.lattice(), coeffs)).passed()) break;
    }
    o.require(verify(eps).failed_check == "tracked-positivity", "inflated epsilon");
  }

  auto lambda = c;
  lambda.lambda = c.seshadri_bound + make_rational(1, 3);
  o.require(verify(lambda).failed_check == "seshadri-bound", "lambda above bound");
  o.require(verify(c).accepted, "untampered certificate rejected");
  return o;
}

Outcome reductivity() {
  Outcome o;
  o.require(is_reductive(FanModel::projective_plane()), "P2");
  o.require(is_reductive(FanModel::hirzebruch(0)), "F0");
  for (unsigned n = 1; n <= 6; ++n) {
    o.require(!is_reductive(FanModel::hirzebruch(n)), "F" + std::to_string(n));
  }
  for (unsigned n = 1; n <= 4; ++n) {
    for (const char* step : {"onZ", "generic"}) {
      const auto p = parse_presentation("F(" + std::to_string(n) + "); blowup " + step);
      const auto report = matsushima_verdict(p);
      o.require(report.verdict == ObstructionVerdict::NonReductive, pretty_print(p));
      o.require(report.description_agrees == true, pretty_print(p) + " description");
    }
  }
  // dim (Ga)^{n+1} x| (GL2/mu_n) = n + 5 for n >= 1; P1 x P1 has PGL2 x PGL2, dim 6.
  for (unsigned n = 0; n <= 8; ++n) {
    const std::size_t expected = n == 0 ? 6 : n + 5;
    o.require(2 + demazure_roots(FanModel::hirzebruch(n)).size() == expected,
              "root count F" + std::to_string(n));
    const auto g = aut0_description(SurfacePresentation(Base::hirzebruch(n), {}));
    o.require(g.dimension() == expected, "description dimension F" + std::to_string(n));
  }
  o.require(2 + demazure_roots(FanModel::projective_plane()).size() == 8, "P2 dimension");
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(1007);
  const int cases = 200;
  for (int i = 0; i < cases; ++i) {
    const auto p = parse_presentation(testsupport::random_presentation_text(rng, 8));
    for (const auto& c : p.tracked()) {
      o.require(2 * static_cast<long>(c.genus()) - 2 ==
                    intersect(c.cls(), c.cls()) + intersect(p.canonical(), c.cls()),
                "adjunction");
    }
  }
  for (int i = 0; i < cases; ++i) {
    const auto p = parse_presentation(testsupport::random_presentation_text(rng, 8));
    const Inertia expected{1, p.picard_rank() - 1, 0};
    o.require(p.lattice()->inertia() == expected, "hodge index");
    o.require(testsupport::jacobi_signature(*p.lattice(), rng) == expected, "hodge index (minors)");
  }
  for (int i = 0; i < cases; ++i) {
    const auto p = parse_presentation(testsupport::random_presentation_text(rng, 6));
    const auto ext = std::make_shared<const IntersectionLattice>(p.lattice()->extend_by_blowup());
    const auto a = testsupport::random_class(rng, p.lattice());
    const auto b = testsupport::random_class(rng, p.lattice());
    o.require(intersect(a.pullback(ext), b.pullback(ext)) == intersect(a, b), "pullback isometry");
    o.require(intersect(a.pullback(ext), DivisorClass::basis(ext, ext->rank() - 1)) == 0,
              "pullback orthogonal to E");
  }
  for (int i = 0; i < cases; ++i) {
    const auto n = static_cast<unsigned>(uniform(rng, 0, 6));
    const auto [a, b] = testsupport::random_ample(rng, n);
    const Rational c = testsupport::random_positive(rng, 9, 7);
    const Rational lambda = testsupport::random_fraction_of(rng, a, 40);
    o.require(df_slope(SlopeInput::hirzebruch(n, c * a, c * b), c * lambda) ==
                  c * c * df_slope(SlopeInput::hirzebruch(n, a, b), lambda),
              "scaling covariance");
  }
  for (int i = 0; i < cases; ++i) {
    const auto once = normalize(parse_presentation(testsupport::random_presentation_text(rng, 8)));
    o.require(normalize(once.presentation).presentation == once.presentation, "normalize idempotence");
  }
  for (int i = 0; i < cases; ++i) {
    const auto p = parse_presentation(testsupport::random_presentation_text(rng, 8));
    o.require(parse_presentation(pretty_print(p)) == p, "parser round trip");
  }
  return o;
}

}  // namespace

int main() {
  criterion(1, "endpoint closed form on F_1..F_6, 300 ample classes", 1.0, endpoint_closed_form);
  criterion(2, "total-space oracle equals closed form, 200 tuples", 2.0, oracle_equivalence);
  criterion(3, "quadric DF positive and equal to 2 lambda b (1 - lambda/a)", 0, quadric);
  criterion(4, "pipeline certificates for 100 random presentations", 10.0, pipeline);
  criterion(5, "tamper suite rejects with the named check", 0, tamper);
  criterion(6, "reductivity verdicts and Aut0 dimensions", 1.0, reductivity);
  criterion(7, "property suites, 200 cases each", 0, properties);
  return failures;
}

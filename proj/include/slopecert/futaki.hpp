#pragma once

#include <array>
#include <optional>
#include <vector>

#include "slopecert/lattice.hpp"
#include "slopecert/polynomial.hpp"
#include "slopecert/surface.hpp"

namespace slopecert {

/// Data of the slope test configuration of (S, L) centred at a curve Z.
struct SlopeInput {
  Rational l_dot_z;
  Rational z_squared;
  unsigned genus = 0;
  Rational nu;         // slope of L
  Rational seshadri;   // upper end of the admissible lambda range

  /// Intersection numbers read off the presentation's lattice.
  static SlopeInput from_surface(const SurfacePresentation& p, const DivisorClass& L,
                                 const CurveClassRecord& curve, const Rational& seshadri);

  /// F_n with L = aZ + bF centred at Z; the Seshadri bound is a.
  static SlopeInput hirzebruch(unsigned n, const Rational& a, const Rational& b);
};

/// (-K.L) / L^2. Throws DomainError when L^2 = 0.
Rational slope(const SurfacePresentation& p, const DivisorClass& L);

/// DF(lambda) = 2/3 nu (lambda^3 Z^2 - 3 lambda^2 L.Z) + lambda^2 (2 - 2g) + 2 lambda L.Z,
/// for 0 < lambda <= seshadri.
Rational df_slope(const SlopeInput& in, const Rational& lambda);

/// The same cubic as a polynomial in lambda.
Polynomial df_polynomial(const SlopeInput& in);

/// Intersection ring of the total space X = Bl_{Z x 0}(S x P1), restricted to
/// the span of M = pullback of L, N = pullback of K_S and the exceptional
/// divisor E. Triple products with at least two pulled-back factors vanish;
/// the others are M.E^2 = -L.Z, N.E^2 = -K_S.Z and E^3 = -Z^2.
class TestConfigModel {
 public:
  enum Generator { kM = 0, kN = 1, kE = 2 };
  using Vector = std::array<Rational, 3>;

  /// K_S.Z from adjunction: K.Z = 2g - 2 - Z^2.
  static TestConfigModel from_slope_input(const SlopeInput& in);

  /// Every number recomputed from the lattice.
  static TestConfigModel from_surface(const SurfacePresentation& p, const DivisorClass& L,
                                      const CurveClassRecord& curve, const Rational& seshadri);

  Rational triple(const Vector& a, const Vector& b, const Vector& c) const;

  const Rational& nu() const { return nu_; }
  const Rational& seshadri() const { return seshadri_; }

 private:
  TestConfigModel(const Rational& l_dot_z, const Rational& k_dot_z, const Rational& z_squared,
                  Rational nu, Rational seshadri);

  std::array<Rational, 27> table_;
  Rational nu_;
  Rational seshadri_;
};

/// DF = 2/3 nu L_lambda^3 + L_lambda^2 . (K_X - p^* K_P1) with L_lambda = M - lambda E
/// and K_X - p^* K_P1 = N + E, expanded by trilinearity. Defined on
/// [0, seshadri]; lambda = 0 is the trivial configuration.
Rational df_total_space_oracle(const TestConfigModel& model, const Rational& lambda);

/// DF at lambda = Sesh = a on F_n with L = aZ + bF:
/// (2a^2 n / 3) (a + na - 2b) / (2b - na).
Rational hirzebruch_endpoint_df(unsigned n, const Rational& a, const Rational& b);

struct Destabilizer {
  Rational lambda;
  Rational df;
};

/// Outcome of the lambda search for one (L, Z). An empty `destabilizer`
/// comes with `nonnegative_on_interval` set: DF >= 0 on (0, seshadri) was
/// proved exactly. That rules out this slope configuration only and says
/// nothing about K-polystability.
struct SlopeSearchResult {
  std::optional<Destabilizer> destabilizer;
  bool nonnegative_on_interval = false;
};

constexpr unsigned kDefaultLambdaDepth = 32;

/// Tries lambda_j = sesh (1 - 2^-j) for j = 1..depth, then the ends and
/// midpoints of isolating intervals for the critical points of DF, then
/// decides the sign of DF on (0, sesh) exactly via Sturm sequences.
/// Returned lambdas are strictly inside (0, sesh).
SlopeSearchResult find_destabilizing_lambda(const SlopeInput& in,
                                            unsigned depth = kDefaultLambdaDepth);

/// The dyadic and critical-bracket samples used by the search, in order.
std::vector<Destabilizer> lambda_samples(const SlopeInput& in,
                                         unsigned depth = kDefaultLambdaDepth);

}  // namespace slopecert

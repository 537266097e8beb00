#include "slopecert/futaki.hpp"

#include "slopecert/errors.hpp"
#include "slopecert/positivity.hpp"

namespace slopecert {

namespace {

void check_seshadri(const Rational& seshadri) {
  if (seshadri <= 0) throw DomainError("Seshadri bound must be positive");
}

}  // namespace

SlopeInput SlopeInput::from_surface(const SurfacePresentation& p, const DivisorClass& L,
                                    const CurveClassRecord& curve, const Rational& seshadri) {
  check_seshadri(seshadri);
  return {intersect(L, curve.cls()), intersect(curve.cls(), curve.cls()), curve.genus(),
          slope(p, L), seshadri};
}

SlopeInput SlopeInput::hirzebruch(unsigned n, const Rational& a, const Rational& b) {
  const Rational sesh = seshadri_at_Z(n, a, b);
  const SurfacePresentation surface(Base::hirzebruch(n), {});
  const DivisorClass L(surface.lattice(), {a, b});
  return from_surface(surface, L, *surface.z_section(), sesh);
}

Rational slope(const SurfacePresentation& p, const DivisorClass& L) {
  const Rational self = intersect(L, L);
  if (self == 0) throw DomainError("slope undefined: L^2 = 0");
  return -intersect(p.canonical(), L) / self;
}

Polynomial df_polynomial(const SlopeInput& in) {
  const Rational two_thirds_nu = Rational(2, 3) * in.nu;
  const Rational euler = 2 - 2 * static_cast<long>(in.genus);
  return Polynomial({Rational(0), 2 * in.l_dot_z, -3 * two_thirds_nu * in.l_dot_z + euler,
                     two_thirds_nu * in.z_squared});
}

Rational df_slope(const SlopeInput& in, const Rational& lambda) {
  if (lambda <= 0 || lambda > in.seshadri) {
    throw DomainError("lambda = " + to_string(lambda) + " outside (0, " +
                      to_string(in.seshadri) + "]");
  }
  const Rational sq = lambda * lambda;
  const Rational bracket = sq * lambda * in.z_squared - 3 * sq * in.l_dot_z;
  return Rational(2, 3) * in.nu * bracket + sq * (2 - 2 * static_cast<long>(in.genus)) +
         2 * lambda * in.l_dot_z;
}

// ---------------------------------------------------------------------------

TestConfigModel::TestConfigModel(const Rational& l_dot_z, const Rational& k_dot_z,
                                 const Rational& z_squared, Rational nu, Rational seshadri)
    : nu_(std::move(nu)), seshadri_(std::move(seshadri)) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const int e_count = (i == kE) + (j == kE) + (k == kE);
        Rational value = 0;
        if (e_count == 3) {
          value = -z_squared;
        } else if (e_count == 2) {
          const int other = i != kE ? i : (j != kE ? j : k);
          value = other == kM ? -l_dot_z : -k_dot_z;
        }
        table_[static_cast<std::size_t>(9 * i + 3 * j + k)] = value;
      }
    }
  }
}

TestConfigModel TestConfigModel::from_slope_input(const SlopeInput& in) {
  check_seshadri(in.seshadri);
  const Rational k_dot_z = 2 * static_cast<long>(in.genus) - 2 - in.z_squared;
  return TestConfigModel(in.l_dot_z, k_dot_z, in.z_squared, in.nu, in.seshadri);
}

TestConfigModel TestConfigModel::from_surface(const SurfacePresentation& p,
                                              const DivisorClass& L,
                                              const CurveClassRecord& curve,
                                              const Rational& seshadri) {
  check_seshadri(seshadri);
  const Rational self = intersect(L, L);
  if (self == 0) throw DomainError("slope undefined: L^2 = 0");
  const Rational nu = -intersect(p.canonical(), L) / self;
  return TestConfigModel(intersect(L, curve.cls()), intersect(p.canonical(), curve.cls()),
                         intersect(curve.cls(), curve.cls()), nu, seshadri);
}

Rational TestConfigModel::triple(const Vector& a, const Vector& b, const Vector& c) const {
  Rational total = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < 3; ++j) {
      if (b[j] == 0) continue;
      for (std::size_t k = 0; k < 3; ++k) {
        const Rational& t = table_[9 * i + 3 * j + k];
        if (c[k] != 0 && t != 0) total += a[i] * b[j] * c[k] * t;
      }
    }
  }
  return total;
}

Rational df_total_space_oracle(const TestConfigModel& model, const Rational& lambda) {
  if (lambda < 0 || lambda > model.seshadri()) {
    throw DomainError("lambda = " + to_string(lambda) + " outside [0, " +
                      to_string(model.seshadri()) + "]");
  }
  const TestConfigModel::Vector polarization{Rational(1), Rational(0), Rational(-lambda)};
  const TestConfigModel::Vector relative_canonical{Rational(0), Rational(1), Rational(1)};
  // dimension 2, exponent 1: n / (n + 1) = 2/3
  return Rational(2, 3) * model.nu() * model.triple(polarization, polarization, polarization) +
         model.triple(polarization, polarization, relative_canonical);
}

Rational hirzebruch_endpoint_df(unsigned n, const Rational& a, const Rational& b) {
  if (!is_ample_hirzebruch(n, a, b)) {
    throw DomainError("endpoint formula needs an ample class aZ + bF");
  }
  const Rational nn = n;
  return Rational(2, 3) * a * a * nn * (a + nn * a - 2 * b) / (2 * b - nn * a);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Destabilizer> dyadic_samples(const SlopeInput& in, unsigned depth) {
  std::vector<Destabilizer> out;
  out.reserve(depth);
  for (unsigned j = 1; j <= depth; ++j) {
    Rational lambda = in.seshadri * (1 - inverse_power_of_two(j));
    Rational df = df_slope(in, lambda);
    out.push_back({std::move(lambda), std::move(df)});
  }
  return out;
}

std::vector<Destabilizer> critical_samples(const SlopeInput& in, unsigned depth) {
  std::vector<Destabilizer> out;
  const Polynomial derivative = df_polynomial(in).derivative();
  if (derivative.is_zero()) return out;
  const Rational width = in.seshadri * inverse_power_of_two(depth);
  for (const auto& iv : isolate_roots(derivative, Rational(0), in.seshadri, width)) {
    for (const Rational& x : {iv.lo, Rational((iv.lo + iv.hi) / 2), iv.hi}) {
      if (x > 0 && x < in.seshadri) out.push_back({x, df_slope(in, x)});
    }
  }
  return out;
}

/// A rational point strictly between `from` and the nearest root of q in
/// the direction of `to`, found by repeated halving towards `from`.
Rational gap_point(const Polynomial& q, const Rational& from, const Rational& to) {
  Rational candidate = (from + to) / 2;
  while (true) {
    const bool clear = from < candidate ? count_roots(q, from, candidate) == 0
                                        : count_roots(q, candidate, from) == 0;
    if (clear && q(candidate) != 0) return candidate;
    candidate = (from + candidate) / 2;
  }
}

}  // namespace

std::vector<Destabilizer> lambda_samples(const SlopeInput& in, unsigned depth) {
  check_seshadri(in.seshadri);
  auto out = dyadic_samples(in, depth);
  auto critical = critical_samples(in, depth);
  out.insert(out.end(), critical.begin(), critical.end());
  return out;
}

SlopeSearchResult find_destabilizing_lambda(const SlopeInput& in, unsigned depth) {
  check_seshadri(in.seshadri);
  for (auto& s : dyadic_samples(in, depth)) {
    if (s.df < 0) return {std::move(s), false};
  }
  for (auto& s : critical_samples(in, depth)) {
    if (s.df < 0) return {std::move(s), false};
  }

  // DF = lambda * q(lambda). Between consecutive roots of q the sign is
  // constant, so one non-root per gap decides the sign on (0, sesh).
  const Polynomial cubic = df_polynomial(in);
  const Polynomial q = cubic.divmod(Polynomial({Rational(0), Rational(1)})).first;
  if (q.is_zero()) return {std::nullopt, true};
  const Rational zero = 0;
  const Rational& top = in.seshadri;
  std::vector<Rational> witnesses;
  const auto roots = isolate_roots(q, zero, top);
  if (roots.empty()) {
    witnesses.push_back(top / 2);
  } else {
    witnesses.push_back(roots.front().lo > 0 ? roots.front().lo
                                             : gap_point(q, zero, roots.front().hi));
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) witnesses.push_back(roots[i].hi);
    witnesses.push_back(roots.back().hi < top ? roots.back().hi
                                              : gap_point(q, top, roots.back().lo));
  }
  for (const auto& x : witnesses) {
    if (q(x) < 0) return {Destabilizer{x, df_slope(in, x)}, false};
  }
  return {std::nullopt, true};
}

}  // namespace slopecert

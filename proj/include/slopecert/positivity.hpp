#pragma once

#include <string>
#include <vector>

#include "slopecert/lattice.hpp"
#include "slopecert/surface.hpp"

namespace slopecert {

enum class PositivityVerdict { ExactAmple, TrackedPositive, Fail };

std::string to_string(PositivityVerdict v);
PositivityVerdict parse_positivity_verdict(const std::string& text);

struct TrackedCheck {
  CurveTag curve;
  Rational degree;  // L.C
  bool pass = false;

  friend bool operator==(const TrackedCheck&, const TrackedCheck&) = default;
};

/// Necessary Nakai-type checks of L against the tracked curves.
/// ExactAmple is only reported for a Hirzebruch surface with no blow-ups,
/// where {Z, F} generate the Mori cone and the checks are also sufficient.
struct PositivityReport {
  bool self_positive = false;
  Rational self_intersection;
  std::vector<TrackedCheck> tracked_checks;
  PositivityVerdict verdict = PositivityVerdict::Fail;

  bool passed() const { return verdict != PositivityVerdict::Fail; }

  friend bool operator==(const PositivityReport&, const PositivityReport&) = default;
};

/// aZ + bF on F_n is ample iff a > 0 and b > na.
bool is_ample_hirzebruch(unsigned n, const Rational& a, const Rational& b);

/// Sesh(F_n, aZ + bF, Z) = a. Throws DomainError if the class is not ample.
Rational seshadri_at_Z(unsigned n, const Rational& a, const Rational& b);

PositivityReport tracked_positivity(const SurfacePresentation& p, const DivisorClass& L);

/// Whether 0 < lambda < sigma. When it holds, lambda stays below the
/// Seshadri constant of g*L - eps*G along Z' for all small eps after
/// blowing up a point off Z; that limit statement is recorded as a
/// certificate assumption, not computed.
bool seshadri_interval_after_blowup(const Rational& lambda, const Rational& sigma);

}  // namespace slopecert

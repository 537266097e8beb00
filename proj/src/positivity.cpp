#include "slopecert/positivity.hpp"

#include "slopecert/errors.hpp"

namespace slopecert {

std::string to_string(PositivityVerdict v) {
  switch (v) {
    case PositivityVerdict::ExactAmple:
      return "ExactAmple";
    case PositivityVerdict::TrackedPositive:
      return "TrackedPositive";
    case PositivityVerdict::Fail:
      return "Fail";
  }
  return "Fail";
}

PositivityVerdict parse_positivity_verdict(const std::string& text) {
  if (text == "ExactAmple") return PositivityVerdict::ExactAmple;
  if (text == "TrackedPositive") return PositivityVerdict::TrackedPositive;
  if (text == "Fail") return PositivityVerdict::Fail;
  throw ParseError("unknown positivity verdict '" + text + "'", 1, 1);
}

bool is_ample_hirzebruch(unsigned n, const Rational& a, const Rational& b) {
  return a > 0 && b > a * n;
}

Rational seshadri_at_Z(unsigned n, const Rational& a, const Rational& b) {
  if (!is_ample_hirzebruch(n, a, b)) {
    throw DomainError("Seshadri constant needs an ample class; " + a.get_str() + "Z + " +
                      b.get_str() + "F is not ample on F_" + std::to_string(n));
  }
  return a;
}

PositivityReport tracked_positivity(const SurfacePresentation& p, const DivisorClass& L) {
  if (!same_lattice(p.lattice(), L.lattice())) {
    throw UsageError("polarization does not live on this presentation's lattice");
  }
  PositivityReport report;
  report.self_intersection = intersect(L, L);
  report.self_positive = report.self_intersection > 0;
  bool all = report.self_positive;
  for (const auto& curve : p.tracked()) {
    TrackedCheck check{curve.tag(), intersect(L, curve.cls()), false};
    check.pass = check.degree > 0;
    all = all && check.pass;
    report.tracked_checks.push_back(std::move(check));
  }
  if (!all) {
    report.verdict = PositivityVerdict::Fail;
  } else if (p.base().is_hirzebruch() && p.steps().empty()) {
    report.verdict = PositivityVerdict::ExactAmple;
  } else {
    report.verdict = PositivityVerdict::TrackedPositive;
  }
  return report;
}

bool seshadri_interval_after_blowup(const Rational& lambda, const Rational& sigma) {
  return lambda > 0 && lambda < sigma;
}

}  // namespace slopecert

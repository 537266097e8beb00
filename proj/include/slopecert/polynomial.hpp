#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "slopecert/rational.hpp"

namespace slopecert {

/// Dense univariate polynomial over Q, coefficients lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;

  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;

  /// Euclidean division; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

Polynomial gcd(Polynomial a, Polynomial b);

/// p / gcd(p, p'): same real roots, all simple.
Polynomial squarefree_part(const Polynomial& p);

/// Canonical Sturm chain p, p', -rem(p, p'), ...
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Sign changes of the chain at x, zeros skipped.
std::size_t sign_variations(const std::vector<Polynomial>& chain, const Rational& x);

/// Distinct real roots of p in the open interval (lo, hi).
std::size_t count_roots(const Polynomial& p, const Rational& lo, const Rational& hi);

/// Open interval (lo, hi) whose closure holds exactly one root and whose
/// endpoints are not roots.
struct RootInterval {
  Rational lo;
  Rational hi;
};

/// Isolates every distinct real root of p in (lo, hi), in increasing order.
/// Intervals are pairwise disjoint and lie inside (lo, hi); each is refined
/// until its width is at most `max_width` (pass 0 to skip refinement).
std::vector<RootInterval> isolate_roots(const Polynomial& p, const Rational& lo,
                                        const Rational& hi, const Rational& max_width = 0);

}  // namespace slopecert

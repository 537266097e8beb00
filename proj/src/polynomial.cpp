#include "slopecert/polynomial.hpp"

#include "slopecert/errors.hpp"

namespace slopecert {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator-() const {
  auto c = coeffs_;
  for (auto& x : c) x = -x;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Rational> c(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  std::vector<Rational> c(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) c[i] -= other.coeffs_[i];
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {Polynomial(), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1));
  for (int k = degree() - dd; k >= 0; --k) {
    const Rational factor = rem[static_cast<std::size_t>(k + dd)] / divisor.leading();
    quot[static_cast<std::size_t>(k)] = factor;
    if (factor == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= factor * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const Rational lead = a.leading();
  std::vector<Rational> c = a.coeffs();
  for (auto& x : c) x /= lead;
  return Polynomial(std::move(c));
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  return p.divmod(gcd(p, p.derivative())).first;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  Polynomial d = p.derivative();
  while (!d.is_zero()) {
    chain.push_back(d);
    d = -chain[chain.size() - 2].divmod(chain.back()).second;
  }
  return chain;
}

std::size_t sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& poly : chain) {
    const int s = sign(poly(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

namespace {

/// Squarefree part with any roots exactly at lo or hi divided out.
Polynomial interior_part(const Polynomial& p, const Rational& lo, const Rational& hi) {
  Polynomial q = squarefree_part(p);
  for (const Rational& end : {lo, hi}) {
    if (q.degree() >= 1 && q(end) == 0) {
      q = q.divmod(Polynomial({-end, Rational(1)})).first;
    }
  }
  return q;
}

Rational split_point(const Polynomial& q, const Rational& a, const Rational& b) {
  Rational m = (a + b) / 2;
  for (long k = 3; q(m) == 0; ++k) m = a + (b - a) / k;
  return m;
}

void isolate(const Polynomial& q, const std::vector<Polynomial>& chain, const Rational& a,
             const Rational& b, std::size_t count, const Rational& max_width,
             std::vector<RootInterval>& out) {
  if (count == 0) return;
  if (count == 1 && (max_width == 0 || b - a <= max_width)) {
    out.push_back({a, b});
    return;
  }
  const Rational m = split_point(q, a, b);
  const std::size_t vm = sign_variations(chain, m);
  const std::size_t left = sign_variations(chain, a) - vm;
  isolate(q, chain, a, m, left, max_width, out);
  isolate(q, chain, m, b, count - left, max_width, out);
}

}  // namespace

std::size_t count_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw UsageError("count_roots needs lo < hi");
  if (p.is_zero()) throw DomainError("the zero polynomial vanishes everywhere");
  const Polynomial q = interior_part(p, lo, hi);
  if (q.degree() <= 0) return 0;
  const auto chain = sturm_sequence(q);
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

std::vector<RootInterval> isolate_roots(const Polynomial& p, const Rational& lo,
                                        const Rational& hi, const Rational& max_width) {
  if (!(lo < hi)) throw UsageError("isolate_roots needs lo < hi");
  if (p.is_zero()) throw DomainError("the zero polynomial vanishes everywhere");
  std::vector<RootInterval> out;
  const Polynomial q = interior_part(p, lo, hi);
  if (q.degree() <= 0) return out;
  const auto chain = sturm_sequence(q);
  const std::size_t total = sign_variations(chain, lo) - sign_variations(chain, hi);
  isolate(q, chain, lo, hi, total, max_width, out);
  return out;
}

}  // namespace slopecert

#include "slopecert/lattice.hpp"

#include <utility>

#include "slopecert/errors.hpp"

namespace slopecert {

IntersectionLattice IntersectionLattice::hirzebruch(unsigned n) {
  return IntersectionLattice(Base::hirzebruch(n), {"Z", "F"},
                             {-static_cast<long>(n), 1, 1, 0});
}

IntersectionLattice IntersectionLattice::projective_plane() {
  return IntersectionLattice(Base::projective_plane(), {"H"}, {1});
}

IntersectionLattice IntersectionLattice::extend_by_blowup() const {
  const std::size_t old_rank = rank();
  const std::size_t new_rank = old_rank + 1;
  std::vector<long> gram(new_rank * new_rank, 0);
  for (std::size_t i = 0; i < old_rank; ++i) {
    for (std::size_t j = 0; j < old_rank; ++j) gram[i * new_rank + j] = this->gram(i, j);
  }
  gram[old_rank * new_rank + old_rank] = -1;
  auto labels = labels_;
  labels.push_back("E" + std::to_string(exceptional_count() + 1));
  return IntersectionLattice(base_, std::move(labels), std::move(gram));
}

std::size_t IntersectionLattice::exceptional_index(std::size_t step) const {
  if (step == 0 || step > exceptional_count()) {
    throw UsageError("no exceptional class for blow-up step " + std::to_string(step));
  }
  return base_.rank() + step - 1;
}

Inertia IntersectionLattice::inertia() const {
  const std::size_t n = rank();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gram(i, j);
  }

  Inertia result;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // Pick a nonzero diagonal pivot; if only off-diagonal entries remain,
    // replace row/column i by i + j, which makes a[i][i] = 2 a[i][j] != 0.
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n && pivot == n; ++i) {
      if (!done[i] && a[i][i] != 0) pivot = i;
    }
    if (pivot == n) {
      for (std::size_t i = 0; i < n && pivot == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (done[j] || j == i || a[i][j] == 0) continue;
          for (std::size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
          for (std::size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
          pivot = i;
          break;
        }
      }
    }
    if (pivot == n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!done[i]) ++result.zero;
      }
      break;
    }
    const Rational p = a[pivot][pivot];
    if (p > 0) {
      ++result.positive;
    } else {
      ++result.negative;
    }
    done[pivot] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][pivot] == 0) continue;
      const Rational factor = a[i][pivot] / p;
      for (std::size_t k = 0; k < n; ++k) a[i][k] -= factor * a[pivot][k];
      for (std::size_t k = 0; k < n; ++k) a[k][i] -= factor * a[k][pivot];
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  return a == b || (a && b && *a == *b);
}

DivisorClass::DivisorClass(LatticePtr lattice, std::vector<Rational> coeffs)
    : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)) {
  if (!lattice_) throw UsageError("divisor class without a lattice");
  if (coeffs_.size() != lattice_->rank()) {
    throw UsageError("divisor class has " + std::to_string(coeffs_.size()) +
                     " coordinates, lattice rank is " + std::to_string(lattice_->rank()));
  }
  for (auto& c : coeffs_) c.canonicalize();
}

DivisorClass DivisorClass::zero(LatticePtr lattice) {
  const std::size_t r = lattice->rank();
  return DivisorClass(std::move(lattice), std::vector<Rational>(r));
}

DivisorClass DivisorClass::basis(LatticePtr lattice, std::size_t index) {
  std::vector<Rational> coeffs(lattice->rank());
  coeffs.at(index) = 1;
  return DivisorClass(std::move(lattice), std::move(coeffs));
}

DivisorClass DivisorClass::pullback(const LatticePtr& extended) const {
  const auto& from = *lattice_;
  const auto& to = *extended;
  bool ok = to.base() == from.base() && to.rank() >= from.rank();
  for (std::size_t i = 0; ok && i < from.rank(); ++i) {
    for (std::size_t j = 0; j < from.rank(); ++j) ok = ok && to.gram(i, j) == from.gram(i, j);
  }
  if (!ok) throw UsageError("pullback target does not extend the source lattice");
  auto coeffs = coeffs_;
  coeffs.resize(to.rank());
  return DivisorClass(extended, std::move(coeffs));
}

DivisorClass DivisorClass::operator+(const DivisorClass& other) const {
  if (!same_lattice(lattice_, other.lattice_)) throw UsageError("lattice mismatch");
  auto coeffs = coeffs_;
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs_[i];
  return DivisorClass(lattice_, std::move(coeffs));
}

DivisorClass DivisorClass::operator-(const DivisorClass& other) const {
  return *this + (-other);
}

DivisorClass DivisorClass::operator-() const {
  auto coeffs = coeffs_;
  for (auto& c : coeffs) c = -c;
  return DivisorClass(lattice_, std::move(coeffs));
}

DivisorClass operator*(const Rational& c, const DivisorClass& d) {
  auto coeffs = d.coeffs_;
  for (auto& x : coeffs) x *= c;
  return DivisorClass(d.lattice_, std::move(coeffs));
}

bool operator==(const DivisorClass& a, const DivisorClass& b) {
  return same_lattice(a.lattice_, b.lattice_) && a.coeffs_ == b.coeffs_;
}

std::string DivisorClass::str() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational magnitude = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (magnitude != 1) out += magnitude.get_str();
    out += lattice_->labels()[i];
  }
  return out.empty() ? "0" : out;
}

Rational intersect(const DivisorClass& a, const DivisorClass& b) {
  if (!same_lattice(a.lattice(), b.lattice())) {
    throw UsageError("cannot intersect classes from different lattices");
  }
  const auto& lat = *a.lattice();
  Rational total = 0;
  for (std::size_t i = 0; i < lat.rank(); ++i) {
    if (a[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < lat.rank(); ++j) {
      if (const long g = lat.gram(i, j); g != 0) row += b[j] * g;
    }
    total += a[i] * row;
  }
  return total;
}

DivisorClass canonical_class(const LatticePtr& lattice) {
  std::vector<Rational> coeffs(lattice->rank());
  const Base& base = lattice->base();
  if (base.is_hirzebruch()) {
    coeffs[0] = -2;
    coeffs[1] = -static_cast<long>(base.n + 2);
  } else {
    coeffs[0] = -3;
  }
  for (std::size_t i = base.rank(); i < lattice->rank(); ++i) coeffs[i] = 1;
  return DivisorClass(lattice, std::move(coeffs));
}

// ---------------------------------------------------------------------------

std::string CurveTag::str() const {
  switch (kind) {
    case CurveKind::ZSection:
      return "Z";
    case CurveKind::Line:
      return "H";
    case CurveKind::Fiber:
      return step == 0 ? "F" : "F" + std::to_string(step);
    case CurveKind::Exceptional:
      return "E" + std::to_string(step);
  }
  return "?";
}

CurveTag CurveTag::parse(const std::string& text) {
  if (text == "Z") return z_section();
  if (text == "H") return line();
  if (text == "F") return general_fiber();
  if (text.size() >= 2 && (text[0] == 'F' || text[0] == 'E') && text[1] != '0') {
    std::size_t step = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9' || step > 1'000'000) {
        throw ParseError("bad curve tag '" + text + "'", 1, 1);
      }
      step = step * 10 + static_cast<std::size_t>(text[i] - '0');
    }
    return text[0] == 'F' ? fiber(step) : exceptional(step);
  }
  throw ParseError("bad curve tag '" + text + "'", 1, 1);
}

CurveClassRecord::CurveClassRecord(DivisorClass cls, unsigned genus, CurveTag tag)
    : cls_(std::move(cls)), genus_(genus), tag_(tag) {
  const Rational lhs = 2 * static_cast<long>(genus_) - 2;
  const Rational rhs = intersect(cls_, cls_) + intersect(canonical_class(cls_.lattice()), cls_);
  if (lhs != rhs) {
    throw InvariantViolation("adjunction fails for curve " + tag_.str() + " of class " +
                             cls_.str() + ": 2g-2 = " + lhs.get_str() +
                             " but C^2 + K.C = " + rhs.get_str());
  }
}

CurveClassRecord proper_transform(const CurveClassRecord& curve, const LatticePtr& extended,
                                  int multiplicity) {
  if (multiplicity != 0 && multiplicity != 1) {
    throw UsageError("only smooth points (multiplicity 0 or 1) are supported");
  }
  DivisorClass cls = curve.cls().pullback(extended);
  if (multiplicity == 1) {
    cls = cls - DivisorClass::basis(extended, extended->rank() - 1);
  }
  return CurveClassRecord(std::move(cls), curve.genus(), curve.tag());
}

}  // namespace slopecert

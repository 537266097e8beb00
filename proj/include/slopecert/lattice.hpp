#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "slopecert/rational.hpp"

namespace slopecert {

enum class BaseKind { ProjectivePlane, Hirzebruch };

/// Minimal model a presentation starts from: P2 or the Hirzebruch surface F_n.
struct Base {
  BaseKind kind = BaseKind::Hirzebruch;
  unsigned n = 0;

  static Base projective_plane() { return {BaseKind::ProjectivePlane, 0}; }
  static Base hirzebruch(unsigned n) { return {BaseKind::Hirzebruch, n}; }

  bool is_hirzebruch() const { return kind == BaseKind::Hirzebruch; }
  std::size_t rank() const { return is_hirzebruch() ? 2 : 1; }

  friend bool operator==(const Base&, const Base&) = default;
};

/// Counts of positive, negative and zero eigenvalues of a symmetric form.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Picard lattice of a blown-up minimal rational surface.
///
/// Basis order is (Z, F, E1, ..., Ek) over F_n and (H, E1, ..., Ek) over
/// P2. The exceptional classes are total transforms, so each E_i is
/// orthogonal to everything pulled back from before step i and E_i^2 = -1.
class IntersectionLattice {
 public:
  static IntersectionLattice hirzebruch(unsigned n);
  static IntersectionLattice projective_plane();

  /// One more blow-up: appends E_{k+1}, orthogonal to the old basis.
  IntersectionLattice extend_by_blowup() const;

  const Base& base() const { return base_; }
  std::size_t rank() const { return labels_.size(); }
  std::size_t exceptional_count() const { return rank() - base_.rank(); }
  const std::vector<std::string>& labels() const { return labels_; }
  long gram(std::size_t i, std::size_t j) const { return gram_[i * rank() + j]; }

  /// Basis index of the exceptional class of blow-up `step` (1-based).
  std::size_t exceptional_index(std::size_t step) const;

  /// Sylvester inertia, computed by exact congruence diagonalization.
  Inertia inertia() const;

  friend bool operator==(const IntersectionLattice&, const IntersectionLattice&) = default;

 private:
  IntersectionLattice(Base base, std::vector<std::string> labels, std::vector<long> gram)
      : base_(base), labels_(std::move(labels)), gram_(std::move(gram)) {}

  Base base_;
  std::vector<std::string> labels_;
  std::vector<long> gram_;
};

using LatticePtr = std::shared_ptr<const IntersectionLattice>;

/// A Q-divisor class: rational coordinates in a lattice's basis.
class DivisorClass {
 public:
  DivisorClass(LatticePtr lattice, std::vector<Rational> coeffs);

  static DivisorClass zero(LatticePtr lattice);
  static DivisorClass basis(LatticePtr lattice, std::size_t index);

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const { return coeffs_.size(); }

  /// Total transform into `extended`, which must extend this lattice by
  /// one or more blow-ups.
  DivisorClass pullback(const LatticePtr& extended) const;

  DivisorClass operator+(const DivisorClass& other) const;
  DivisorClass operator-(const DivisorClass& other) const;
  DivisorClass operator-() const;
  friend DivisorClass operator*(const Rational& c, const DivisorClass& d);

  /// Same lattice and equal coordinates.
  friend bool operator==(const DivisorClass& a, const DivisorClass& b);

  /// e.g. "2Z + 3F - 1/4E1".
  std::string str() const;

 private:
  LatticePtr lattice_;
  std::vector<Rational> coeffs_;
};

bool same_lattice(const LatticePtr& a, const LatticePtr& b);

/// Intersection pairing. Throws UsageError for classes on different lattices.
Rational intersect(const DivisorClass& a, const DivisorClass& b);

/// K = -(2Z + (n+2)F) + sum E_i over F_n, K = -3H + sum E_i over P2.
DivisorClass canonical_class(const LatticePtr& lattice);

enum class CurveKind { ZSection, Fiber, Exceptional, Line };

/// Identity of a tracked curve; `step` is the 1-based blow-up it belongs to
/// (unused for ZSection and Line).
struct CurveTag {
  CurveKind kind = CurveKind::ZSection;
  std::size_t step = 0;

  static CurveTag z_section() { return {CurveKind::ZSection, 0}; }
  static CurveTag fiber(std::size_t step) { return {CurveKind::Fiber, step}; }
  /// A fiber through none of the blown-up points.
  static CurveTag general_fiber() { return {CurveKind::Fiber, 0}; }
  static CurveTag exceptional(std::size_t step) { return {CurveKind::Exceptional, step}; }
  static CurveTag line() { return {CurveKind::Line, 0}; }

  /// "Z", "F3", "E2" or "H".
  std::string str() const;
  static CurveTag parse(const std::string& text);

  friend bool operator==(const CurveTag&, const CurveTag&) = default;
};

/// A smooth curve's class and genus, checked against adjunction
/// 2g - 2 = C^2 + K.C on construction.
class CurveClassRecord {
 public:
  CurveClassRecord(DivisorClass cls, unsigned genus, CurveTag tag);

  const DivisorClass& cls() const { return cls_; }
  unsigned genus() const { return genus_; }
  const CurveTag& tag() const { return tag_; }

 private:
  DivisorClass cls_;
  unsigned genus_;
  CurveTag tag_;
};

/// Proper transform under the blow-up whose lattice is `extended`:
/// pullback(C) - multiplicity * E_new. Multiplicity is 0 or 1.
CurveClassRecord proper_transform(const CurveClassRecord& curve, const LatticePtr& extended,
                                  int multiplicity);

}  // namespace slopecert

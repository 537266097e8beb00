#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slopecert/lattice.hpp"

namespace slopecert {

/// Where a blown-up point sits relative to the proper transform of Z.
enum class Locus { OnZ, OffZ };

struct BlowupStep {
  Locus locus = Locus::OffZ;

  friend bool operator==(const BlowupStep&, const BlowupStep&) = default;
};

/// A rational surface as a minimal model plus an ordered word of blow-ups.
///
/// Points are combinatorial: a step only records whether its point lies on
/// the current proper transform of Z. Points are in general position
/// otherwise (distinct fibers, distinct exceptional classes pair to zero).
/// Over P2 the section Z is the first exceptional curve, so the first step
/// must be OffZ.
///
/// Tracked curves: the Z transform, the fiber through each blown-up point
/// and each exceptional curve (or the line H on bare P2).
class SurfacePresentation {
 public:
  SurfacePresentation(Base base, std::vector<BlowupStep> steps);

  const Base& base() const { return base_; }
  const std::vector<BlowupStep>& steps() const { return steps_; }
  const LatticePtr& lattice() const { return lattice_; }
  const DivisorClass& canonical() const { return canonical_; }
  const std::vector<CurveClassRecord>& tracked() const { return tracked_; }

  std::size_t picard_rank() const { return lattice_->rank(); }
  std::size_t on_z_count() const;

  /// Proper transform of Z; absent on P2 with no blow-ups.
  const CurveClassRecord* z_section() const;

  /// Bare P2 or bare F_0.
  bool is_minimal_polystable() const;

  /// The surface after the first `count` blow-ups.
  SurfacePresentation prefix(std::size_t count) const;

  friend bool operator==(const SurfacePresentation& a, const SurfacePresentation& b) {
    return a.base_ == b.base_ && a.steps_ == b.steps_;
  }

 private:
  Base base_;
  std::vector<BlowupStep> steps_;
  LatticePtr lattice_;
  DivisorClass canonical_;
  std::vector<CurveClassRecord> tracked_;
};

/// presentation := base (";" step)* ; base := "P2" | "F(" nat ")" ;
/// step := "blowup" ("generic" | "onZ"). '#' starts a comment.
SurfacePresentation parse_presentation(std::string_view text);

/// Canonical text, e.g. "F(2); blowup generic; blowup onZ".
std::string pretty_print(const SurfacePresentation& p);

/// Integer change of basis between two presentations of the same surface.
/// Column j holds the coordinates of old basis element j in the new basis.
struct BasisChange {
  std::vector<std::vector<long>> matrix;  // [new_index][old_index]

  DivisorClass apply(const DivisorClass& d, const LatticePtr& target) const;
};

struct Rewrite {
  SurfacePresentation result;
  BasisChange basis_change;
};

/// Blow up the OnZ point and contract the transform of its fiber, landing on
/// F_{n+1} with that step now OffZ. On a bare-ruled F_0 with no OnZ steps a
/// generic step may also be used: its point lies on some curve of class Z.
/// `step_index` is 0-based.
Rewrite elementary_transform_with_map(const SurfacePresentation& p, std::size_t step_index);
SurfacePresentation elementary_transform(const SurfacePresentation& p, std::size_t step_index);

/// P2 with at least one blow-up, re-read over F_1 (the first blow-up
/// becomes F_1 -> P2, its exceptional curve becomes Z).
Rewrite rewrite_projective_plane(const SurfacePresentation& p);

struct Normalization {
  SurfacePresentation presentation;
  BasisChange basis_change;  // original -> normalized
  bool minimal_polystable = false;
};

/// Rewrites to some F_m, m >= 1, with no OnZ steps. Bare P2 and bare F(0)
/// come back unchanged and flagged.
Normalization normalize(const SurfacePresentation& p);

}  // namespace slopecert

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slopecert/surface.hpp"

namespace slopecert {

struct Ray {
  long x = 0;
  long y = 0;

  friend bool operator==(const Ray&, const Ray&) = default;
};

/// Fan of a smooth toric surface: primitive rays in counter-clockwise order.
/// Cone i spans rays i and i+1 (cyclically).
class FanModel {
 public:
  /// Throws UsageError unless rays are primitive, pairwise distinct in
  /// direction and listed counter-clockwise.
  explicit FanModel(std::vector<Ray> rays);

  static FanModel hirzebruch(unsigned n);
  static FanModel projective_plane();

  const std::vector<Ray>& rays() const { return rays_; }
  bool complete() const { return complete_; }

  /// Blow-up of the torus-fixed point of cone i: inserts ray_i + ray_{i+1}
  /// at position i+1.
  FanModel star_subdivide(std::size_t cone) const;

  std::string str() const;

  friend bool operator==(const FanModel&, const FanModel&) = default;

 private:
  std::vector<Ray> rays_;
  bool complete_ = false;
};

/// A character m with <m, ray_d> = -1 and <m, ray_j> >= 0 for j != d.
struct DemazureRoot {
  std::array<long, 2> character{};
  std::size_t distinguished_ray = 0;

  friend bool operator==(const DemazureRoot&, const DemazureRoot&) = default;
};

/// All Demazure roots, grouped by distinguished ray. For each ray the
/// candidates form a lattice segment on the line <m, ray> = -1 whose ends
/// come from the other rays' inequalities. Throws UsageError for an
/// incomplete fan.
std::vector<DemazureRoot> demazure_roots(const FanModel& fan);

/// The root set is closed under negation.
bool is_reductive(const FanModel& fan);

/// Every blow-up read as a torus-fixed point. `schedule[i]` is the cone
/// refined by step i: onZ steps must use a cone containing the ray of Z,
/// generic steps a cone that does not (over P2 the first step may use any
/// cone, and its new ray becomes Z).
struct ToricRealization {
  FanModel fan;
  std::vector<std::size_t> schedule;
};

/// Without a schedule, onZ steps take a fixed point of Z on a fiber not yet
/// used and generic steps the first fixed point off Z between rays of the
/// minimal model. Throws Unsupported when no such point is left.
ToricRealization toric_realization(const SurfacePresentation& p,
                                   const std::optional<std::vector<std::size_t>>& schedule = {});

FanModel fan_of(const SurfacePresentation& p,
                const std::optional<std::vector<std::size_t>>& schedule = {});

/// Aut0 as unipotent radical extended by a reductive part modulo a finite group.
struct GroupDescription {
  unsigned unipotent_dim = 0;
  std::string reductive_part;
  unsigned reductive_dim = 0;
  std::string finite_quotient;  // empty when trivial
  std::string display;

  bool reductive() const { return unipotent_dim == 0; }
  unsigned dimension() const { return unipotent_dim + reductive_dim; }
};

/// Explicit Aut0 for P2, F_n and one-point blow-ups of F_n (P2 with up to
/// two blow-ups is read over F_1). A point of F_n off Z_n gives the same
/// surface as the point on Z_{n-1} of F_{n-1}. Throws Unsupported otherwise.
GroupDescription aut0_description(const SurfacePresentation& p);

enum class ObstructionVerdict { NonReductive, Silent };

struct ObstructionReport {
  std::string presentation;
  ObstructionVerdict verdict = ObstructionVerdict::Silent;
  ToricRealization realization;
  std::vector<DemazureRoot> roots;
  std::optional<GroupDescription> description;
  /// Set when a description exists: its reductivity and dimension
  /// (2 + #roots) agree with the fan computation.
  std::optional<bool> description_agrees;
  std::string message;

  std::string to_text() const;
  std::string to_json() const;
};

/// Matsushima-Lichnerowicz: a non-reductive Aut0 rules out cscK metrics in
/// every Kahler class. A reductive Aut0 proves nothing.
ObstructionReport matsushima_verdict(const SurfacePresentation& p,
                                     const std::optional<std::vector<std::size_t>>& schedule = {});

}  // namespace slopecert

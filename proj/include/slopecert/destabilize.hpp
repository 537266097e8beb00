#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slopecert/futaki.hpp"
#include "slopecert/positivity.hpp"
#include "slopecert/surface.hpp"

namespace slopecert {

inline constexpr int kCertificateSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "slopecert 0.1.0";

/// lambda stays below Sesh(S', L'_eps, Z') for the chosen small eps.
inline constexpr std::string_view kAssumeSmallEpsilon = "rt-blowup-small-epsilon";
/// Curves outside the tracked set meet the polarization positively.
inline constexpr std::string_view kAssumeUntrackedCurves = "untracked-curves-positive";

/// Exact, replayable witness that (S, L) is K-unstable: the slope test
/// configuration centred at Z with parameter lambda has DF < 0.
///
/// The polarization lives on the normalized presentation, where it is the
/// pullback of an ample class aZ + bF on F_m minus eps_i E_i for each step.
struct Certificate {
  int schema_version = kCertificateSchemaVersion;
  std::string tool_version{kToolVersion};
  std::string presentation;
  std::string normalized_presentation;
  std::vector<std::string> basis;
  std::vector<Rational> polarization;
  CurveTag curve_tag = CurveTag::z_section();
  std::vector<Rational> curve_class;
  unsigned curve_genus = 0;
  Rational seshadri_bound;
  Rational lambda;
  Rational df_value;
  std::vector<Rational> epsilon_chain;  // lift order, one per blow-up
  PositivityReport positivity;
  std::vector<std::string> assumptions;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Bare P2 or F_0: every polarization is K-polystable.
struct MinimalPolystable {
  std::string presentation;
  std::string reason;
};

using Verdict = std::variant<Certificate, MinimalPolystable>;

struct DestabilizeOptions {
  unsigned lambda_depth = kDefaultLambdaDepth;
  unsigned epsilon_depth = 64;
};

/// Raised when no eps = 2^-t, t <= epsilon_depth, passes the lift checks.
class LiftFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normalizes to F_m (m >= 1) with every point off Z, destabilizes the seed
/// polarization Z + (m+1)F on F_m, then lifts through each blow-up with
/// eps_i = 2^-t halving from 1/2. lambda is fixed on the base.
///
/// Each eps_i must keep the tracked checks positive, keep DF(lambda) < 0,
/// and keep the slope non-increasing in every eps_j on the box below the
/// chain, so any smaller chain also destabilizes.
Verdict destabilize(const SurfacePresentation& p, const DestabilizeOptions& options = {});

struct VerifyReport {
  bool accepted = false;
  std::string failed_check;  // empty when accepted
  std::string detail;
  std::vector<std::string> passed_checks;
};

/// Replays a certificate from its presentation text alone. Checks, in order:
/// schema, assumptions, presentation, normalization, seshadri-bound,
/// epsilon-chain, tracked-positivity, polarization, curve, df-replay,
/// positivity-report. DF is recomputed both by the closed-form cubic and
/// the total-space intersection oracle.
VerifyReport verify(const Certificate& c);

/// Versioned JSON; rationals as canonical "num/den" strings.
std::string emit(const Certificate& c);

/// Strict inverse of emit. Throws ParseError on malformed JSON, missing or
/// mistyped fields, unknown schema version or non-canonical rationals.
Certificate load(std::string_view document);

/// Writes to a sibling temp file, then renames over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace slopecert

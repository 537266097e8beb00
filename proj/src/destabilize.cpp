#include "slopecert/destabilize.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include "json.hpp"
#include "slopecert/errors.hpp"

namespace slopecert {

namespace {

using Json = nlohmann::ordered_json;

/// pullback(aZ + bF) - sum eps_j E_j on the first chain.size() blow-ups of S.
DivisorClass chained_polarization(const SurfacePresentation& prefix, const Rational& a,
                                  const Rational& b, const std::vector<Rational>& chain) {
  std::vector<Rational> coeffs(prefix.picard_rank());
  coeffs[0] = a;
  coeffs[1] = b;
  for (std::size_t j = 0; j < chain.size(); ++j) coeffs[2 + j] = -chain[j];
  return DivisorClass(prefix.lattice(), std::move(coeffs));
}

/// d nu / d eps_j <= 0 on the whole box [0, eps]^k when
/// 2 eps_j (-K.L0) < L0^2 - sum eps^2 for every j.
bool slope_monotone(const Rational& anticanonical_degree, const Rational& self_intersection,
                    const std::vector<Rational>& chain) {
  Rational room = self_intersection;
  for (const auto& e : chain) room -= e * e;
  return std::all_of(chain.begin(), chain.end(), [&](const Rational& e) {
    return 2 * e * anticanonical_degree < room;
  });
}

}  // namespace

Verdict destabilize(const SurfacePresentation& p, const DestabilizeOptions& options) {
  if (p.is_minimal_polystable()) {
    return MinimalPolystable{
        pretty_print(p),
        std::string(p.base().is_hirzebruch() ? "P1xP1" : "P2") +
            " is K-polystable for every polarization (homogeneous, cscK); nothing to destabilize"};
  }
  const SurfacePresentation surface = normalize(p).presentation;
  const unsigned m = surface.base().n;
  const Rational a = 1;
  const Rational b = static_cast<long>(m) + 1;
  const Rational sesh = seshadri_at_Z(m, a, b);

  const SurfacePresentation base = surface.prefix(0);
  const DivisorClass seed = chained_polarization(base, a, b, {});
  const auto search = find_destabilizing_lambda(
      SlopeInput::from_surface(base, seed, *base.z_section(), sesh), options.lambda_depth);
  if (!search.destabilizer) {
    throw InvariantViolation("no destabilizing lambda on F_" + std::to_string(m));
  }
  const Rational lambda = search.destabilizer->lambda;
  if (!seshadri_interval_after_blowup(lambda, sesh)) {
    throw InvariantViolation("lambda search left (0, Sesh)");
  }

  const Rational anticanonical = -intersect(base.canonical(), seed);
  const Rational self = intersect(seed, seed);
  std::vector<Rational> chain;
  for (std::size_t step = 1; step <= surface.steps().size(); ++step) {
    const SurfacePresentation prefix = surface.prefix(step);
    bool placed = false;
    for (unsigned t = 1; t <= options.epsilon_depth && !placed; ++t) {
      chain.push_back(inverse_power_of_two(t));
      const DivisorClass L = chained_polarization(prefix, a, b, chain);
      placed = tracked_positivity(prefix, L).passed() &&
               df_slope(SlopeInput::from_surface(prefix, L, *prefix.z_section(), sesh), lambda) <
                   0 &&
               slope_monotone(anticanonical, self, chain);
      if (!placed) chain.pop_back();
    }
    if (!placed) {
      throw LiftFailure("no eps = 2^-t with t <= " + std::to_string(options.epsilon_depth) +
                        " lifts the destabilizer through blow-up " + std::to_string(step) +
                        " of " + pretty_print(surface));
    }
  }

  const DivisorClass L = chained_polarization(surface, a, b, chain);
  const CurveClassRecord& z = *surface.z_section();
  Certificate c;
  c.presentation = pretty_print(p);
  c.normalized_presentation = pretty_print(surface);
  c.basis = surface.lattice()->labels();
  c.polarization = L.coeffs();
  c.curve_tag = z.tag();
  c.curve_class = z.cls().coeffs();
  c.curve_genus = z.genus();
  c.seshadri_bound = sesh;
  c.lambda = lambda;
  c.df_value = df_slope(SlopeInput::from_surface(surface, L, z, sesh), lambda);
  c.epsilon_chain = chain;
  c.positivity = tracked_positivity(surface, L);
  c.assumptions = {std::string(kAssumeSmallEpsilon), std::string(kAssumeUntrackedCurves)};
  return c;
}

// ---------------------------------------------------------------------------

namespace {

struct Rejection {
  std::string check;
  std::string detail;
};

}  // namespace

VerifyReport verify(const Certificate& c) {
  VerifyReport report;
  auto pass = [&](const char* name) { report.passed_checks.emplace_back(name); };

  try {
    if (c.schema_version != kCertificateSchemaVersion) {
      throw Rejection{"schema", "unknown schema version " + std::to_string(c.schema_version)};
    }
    pass("schema");

    for (const auto flag : {kAssumeSmallEpsilon, kAssumeUntrackedCurves}) {
      if (std::find(c.assumptions.begin(), c.assumptions.end(), flag) == c.assumptions.end()) {
        throw Rejection{"assumptions", "missing assumption flag '" + std::string(flag) + "'"};
      }
    }
    pass("assumptions");

    std::optional<SurfacePresentation> original;
    try {
      original = parse_presentation(c.presentation);
    } catch (const ParseError& e) {
      throw Rejection{"presentation", e.what()};
    }
    if (pretty_print(*original) != c.presentation) {
      throw Rejection{"presentation", "presentation text is not in canonical form"};
    }
    if (original->is_minimal_polystable()) {
      throw Rejection{"presentation", "P2 and P1xP1 have no destabilizing configuration"};
    }
    pass("presentation");

    const SurfacePresentation surface = normalize(*original).presentation;
    if (pretty_print(surface) != c.normalized_presentation) {
      throw Rejection{"normalization", "expected '" + pretty_print(surface) + "'"};
    }
    const std::size_t rank = surface.picard_rank();
    if (c.basis != surface.lattice()->labels() || c.polarization.size() != rank ||
        c.curve_class.size() != rank) {
      throw Rejection{"normalization", "basis or class dimensions disagree with the lattice"};
    }
    pass("normalization");

    const unsigned m = surface.base().n;
    const Rational& a = c.polarization[0];
    const Rational& b = c.polarization[1];
    if (!is_ample_hirzebruch(m, a, b)) {
      throw Rejection{"seshadri-bound", "base polarization is not ample on F_" +
                                            std::to_string(m)};
    }
    if (seshadri_at_Z(m, a, b) != c.seshadri_bound) {
      throw Rejection{"seshadri-bound", "recorded bound " + to_string(c.seshadri_bound) +
                                            " differs from Sesh = " + to_string(a)};
    }
    if (!seshadri_interval_after_blowup(c.lambda, c.seshadri_bound)) {
      throw Rejection{"seshadri-bound", "lambda = " + to_string(c.lambda) + " not in (0, " +
                                            to_string(c.seshadri_bound) + ")"};
    }
    pass("seshadri-bound");

    if (c.epsilon_chain.size() != surface.steps().size()) {
      throw Rejection{"epsilon-chain", "expected one epsilon per blow-up"};
    }
    for (const auto& e : c.epsilon_chain) {
      if (e <= 0) throw Rejection{"epsilon-chain", "epsilon " + to_string(e) + " is not positive"};
    }
    pass("epsilon-chain");

    std::vector<Rational> chain;
    for (std::size_t step = 0; step <= c.epsilon_chain.size(); ++step) {
      if (step > 0) chain.push_back(c.epsilon_chain[step - 1]);
      const SurfacePresentation prefix = surface.prefix(step);
      const auto r = tracked_positivity(prefix, chained_polarization(prefix, a, b, chain));
      if (!r.passed()) {
        throw Rejection{"tracked-positivity",
                        "polarization fails the tracked checks after blow-up " +
                            std::to_string(step)};
      }
    }
    pass("tracked-positivity");

    const DivisorClass L = chained_polarization(surface, a, b, c.epsilon_chain);
    if (L.coeffs() != c.polarization) {
      throw Rejection{"polarization", "expected " + L.str()};
    }
    pass("polarization");

    const CurveClassRecord& z = *surface.z_section();
    if (c.curve_tag != z.tag() || c.curve_class != z.cls().coeffs() ||
        c.curve_genus != z.genus()) {
      throw Rejection{"curve", "curve is not the proper transform of Z"};
    }
    pass("curve");

    for (std::size_t step = 0; step < c.epsilon_chain.size(); ++step) {
      const SurfacePresentation prefix = surface.prefix(step);
      const std::vector<Rational> partial(c.epsilon_chain.begin(),
                                          c.epsilon_chain.begin() + static_cast<long>(step));
      const DivisorClass Li = chained_polarization(prefix, a, b, partial);
      if (df_slope(SlopeInput::from_surface(prefix, Li, *prefix.z_section(), c.seshadri_bound),
                   c.lambda) >= 0) {
        throw Rejection{"df-replay", "DF is not negative after blow-up " + std::to_string(step)};
      }
    }
    const Rational closed_form =
        df_slope(SlopeInput::from_surface(surface, L, z, c.seshadri_bound), c.lambda);
    const Rational oracle = df_total_space_oracle(
        TestConfigModel::from_surface(surface, L, z, c.seshadri_bound), c.lambda);
    if (closed_form != oracle) {
      throw Rejection{"df-replay", "closed form " + to_string(closed_form) +
                                       " disagrees with intersection oracle " +
                                       to_string(oracle)};
    }
    if (closed_form != c.df_value) {
      throw Rejection{"df-replay", "recorded DF " + to_string(c.df_value) + ", replayed " +
                                       to_string(closed_form)};
    }
    if (c.df_value >= 0) throw Rejection{"df-replay", "DF is not negative"};
    pass("df-replay");

    if (tracked_positivity(surface, L) != c.positivity) {
      throw Rejection{"positivity-report", "recorded positivity report does not replay"};
    }
    pass("positivity-report");
  } catch (const Rejection& r) {
    report.failed_check = r.check;
    report.detail = r.detail;
    return report;
  } catch (const std::exception& e) {
    report.failed_check = "internal";
    report.detail = e.what();
    return report;
  }
  report.accepted = true;
  return report;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

[[noreturn]] void schema_error(const std::string& message) {
  throw ParseError("certificate: " + message, 1, 1);
}

const Json& field(const Json& object, const char* key) {
  if (!object.is_object()) schema_error("expected an object");
  const auto it = object.find(key);
  if (it == object.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const Json& object, const char* key) {
  const Json& v = field(object, key);
  if (!v.is_string()) schema_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

bool bool_field(const Json& object, const char* key) {
  const Json& v = field(object, key);
  if (!v.is_boolean()) schema_error(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

Rational rational_field(const Json& object, const char* key) {
  return parse_canonical(string_field(object, key));
}

std::vector<Rational> rational_list(const Json& object, const char* key) {
  const Json& v = field(object, key);
  if (!v.is_array()) schema_error(std::string("field '") + key + "' must be an array");
  std::vector<Rational> out;
  for (const auto& item : v) {
    if (!item.is_string()) schema_error(std::string("entries of '") + key + "' must be strings");
    out.push_back(parse_canonical(item.get<std::string>()));
  }
  return out;
}

std::vector<std::string> string_list(const Json& object, const char* key) {
  const Json& v = field(object, key);
  if (!v.is_array()) schema_error(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) schema_error(std::string("entries of '") + key + "' must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

unsigned unsigned_field(const Json& object, const char* key) {
  const Json& v = field(object, key);
  if (!v.is_number_unsigned()) {
    schema_error(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<unsigned>();
}

}  // namespace

std::string emit(const Certificate& c) {
  Json checks = Json::array();
  for (const auto& check : c.positivity.tracked_checks) {
    checks.push_back(
        {{"curve", check.curve.str()}, {"degree", to_string(check.degree)}, {"pass", check.pass}});
  }
  Json doc;
  doc["schema_version"] = c.schema_version;
  doc["tool_version"] = c.tool_version;
  doc["presentation"] = c.presentation;
  doc["normalized_presentation"] = c.normalized_presentation;
  doc["basis"] = c.basis;
  doc["polarization"] = rationals_to_json(c.polarization);
  doc["curve"] = {{"tag", c.curve_tag.str()},
                  {"class", rationals_to_json(c.curve_class)},
                  {"genus", c.curve_genus}};
  doc["seshadri_bound"] = to_string(c.seshadri_bound);
  doc["lambda"] = to_string(c.lambda);
  doc["df_value"] = to_string(c.df_value);
  doc["epsilon_chain"] = rationals_to_json(c.epsilon_chain);
  doc["positivity"] = {{"self_positive", c.positivity.self_positive},
                       {"self_intersection", to_string(c.positivity.self_intersection)},
                       {"tracked_checks", checks},
                       {"verdict", to_string(c.positivity.verdict)}};
  doc["assumptions"] = c.assumptions;
  return doc.dump(2) + "\n";
}

Certificate load(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    schema_error(std::string("malformed JSON: ") + e.what());
  }
  Certificate c;
  const Json& version = field(doc, "schema_version");
  if (!version.is_number_integer()) schema_error("schema_version must be an integer");
  c.schema_version = version.get<int>();
  if (c.schema_version != kCertificateSchemaVersion) {
    schema_error("unsupported schema_version " + std::to_string(c.schema_version));
  }
  c.tool_version = string_field(doc, "tool_version");
  c.presentation = string_field(doc, "presentation");
  c.normalized_presentation = string_field(doc, "normalized_presentation");
  c.basis = string_list(doc, "basis");
  c.polarization = rational_list(doc, "polarization");
  const Json& curve = field(doc, "curve");
  c.curve_tag = CurveTag::parse(string_field(curve, "tag"));
  c.curve_class = rational_list(curve, "class");
  c.curve_genus = unsigned_field(curve, "genus");
  c.seshadri_bound = rational_field(doc, "seshadri_bound");
  c.lambda = rational_field(doc, "lambda");
  c.df_value = rational_field(doc, "df_value");
  c.epsilon_chain = rational_list(doc, "epsilon_chain");
  const Json& positivity = field(doc, "positivity");
  c.positivity.self_positive = bool_field(positivity, "self_positive");
  c.positivity.self_intersection = rational_field(positivity, "self_intersection");
  const Json& checks = field(positivity, "tracked_checks");
  if (!checks.is_array()) schema_error("tracked_checks must be an array");
  for (const auto& check : checks) {
    c.positivity.tracked_checks.push_back({CurveTag::parse(string_field(check, "curve")),
                                           rational_field(check, "degree"),
                                           bool_field(check, "pass")});
  }
  c.positivity.verdict = parse_positivity_verdict(string_field(positivity, "verdict"));
  c.assumptions = string_list(doc, "assumptions");
  return c;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + temp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + temp.string());
  }
  std::filesystem::rename(temp, path);
}

}  // namespace slopecert

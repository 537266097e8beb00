#include "slopecert/autgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "json.hpp"
#include "slopecert/errors.hpp"

namespace slopecert {

namespace {

long cross(const Ray& a, const Ray& b) { return a.x * b.y - a.y * b.x; }
long pairing(const std::array<long, 2>& m, const Ray& u) { return m[0] * u.x + m[1] * u.y; }

int half_plane(const Ray& r) { return (r.y > 0 || (r.y == 0 && r.x > 0)) ? 0 : 1; }

bool angle_less(const Ray& a, const Ray& b) {
  const int ha = half_plane(a);
  const int hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

/// s, t with x s + y t = gcd(x, y).
std::array<long, 2> bezout(long x, long y) {
  long old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const long q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_s, -old_t};
  return {old_s, old_t};
}

}  // namespace

FanModel::FanModel(std::vector<Ray> rays) : rays_(std::move(rays)) {
  for (const auto& r : rays_) {
    if (std::gcd(r.x, r.y) != 1) {
      throw UsageError("ray (" + std::to_string(r.x) + "," + std::to_string(r.y) +
                       ") is not primitive");
    }
  }
  const std::size_t n = rays_.size();
  if (n == 0) {
    complete_ = false;
    return;
  }
  auto first = std::min_element(rays_.begin(), rays_.end(), angle_less);
  std::vector<Ray> rotated(first, rays_.end());
  rotated.insert(rotated.end(), rays_.begin(), first);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!angle_less(rotated[i], rotated[i + 1])) {
      throw UsageError("rays must be distinct and listed counter-clockwise");
    }
  }
  complete_ = n >= 3;
  for (std::size_t i = 0; i < n && complete_; ++i) {
    complete_ = cross(rays_[i], rays_[(i + 1) % n]) > 0;
  }
}

FanModel FanModel::hirzebruch(unsigned n) {
  return FanModel({{1, 0}, {0, 1}, {-1, static_cast<long>(n)}, {0, -1}});
}

FanModel FanModel::projective_plane() { return FanModel({{1, 0}, {0, 1}, {-1, -1}}); }

FanModel FanModel::star_subdivide(std::size_t cone) const {
  if (!complete_) throw UsageError("star subdivision needs a complete fan");
  if (cone >= rays_.size()) {
    throw UsageError("cone index " + std::to_string(cone) + " out of range (fan has " +
                     std::to_string(rays_.size()) + " cones)");
  }
  const Ray& a = rays_[cone];
  const Ray& b = rays_[(cone + 1) % rays_.size()];
  auto rays = rays_;
  rays.insert(rays.begin() + static_cast<long>(cone) + 1, Ray{a.x + b.x, a.y + b.y});
  return FanModel(std::move(rays));
}

std::string FanModel::str() const {
  std::string out;
  for (const auto& r : rays_) {
    if (!out.empty()) out += " ";
    out += "(" + std::to_string(r.x) + "," + std::to_string(r.y) + ")";
  }
  return out;
}

std::vector<DemazureRoot> demazure_roots(const FanModel& fan) {
  if (!fan.complete()) throw UsageError("Demazure roots need a complete fan");
  const auto& rays = fan.rays();
  std::vector<DemazureRoot> roots;
  for (std::size_t d = 0; d < rays.size(); ++d) {
    const Ray& u = rays[d];
    const auto st = bezout(u.x, u.y);
    const std::array<long, 2> base{-st[0], -st[1]};  // <base, u> = -1
    const std::array<long, 2> dir{-u.y, u.x};        // <dir, u> = 0
    std::optional<long> lo;
    std::optional<long> hi;
    bool empty = false;
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (j == d) continue;
      const long offset = pairing(base, rays[j]);
      const long slope = pairing(dir, rays[j]);
      if (slope > 0) {
        const long bound = ceil_div(-offset, slope);
        lo = lo ? std::max(*lo, bound) : bound;
      } else if (slope < 0) {
        const long bound = floor_div(offset, -slope);
        hi = hi ? std::min(*hi, bound) : bound;
      } else if (offset < 0) {
        empty = true;
      }
    }
    if (empty) continue;
    if (!lo || !hi) throw UsageError("unbounded root segment; fan is not complete");
    for (long t = *lo; t <= *hi; ++t) {
      roots.push_back({{base[0] + t * dir[0], base[1] + t * dir[1]}, d});
    }
  }
  return roots;
}

bool is_reductive(const FanModel& fan) {
  const auto roots = demazure_roots(fan);
  std::set<std::array<long, 2>> characters;
  for (const auto& r : roots) characters.insert(r.character);
  return std::all_of(characters.begin(), characters.end(), [&](const auto& m) {
    return characters.count({-m[0], -m[1]}) > 0;
  });
}

// ---------------------------------------------------------------------------

ToricRealization toric_realization(const SurfacePresentation& p,
                                   const std::optional<std::vector<std::size_t>>& schedule) {
  if (schedule && schedule->size() != p.steps().size()) {
    throw UsageError("schedule has " + std::to_string(schedule->size()) + " entries for " +
                     std::to_string(p.steps().size()) + " blow-ups");
  }
  FanModel fan = p.base().is_hirzebruch() ? FanModel::hirzebruch(p.base().n)
                                          : FanModel::projective_plane();
  std::optional<std::size_t> z_ray;
  std::vector<bool> original(fan.rays().size(), true);
  if (p.base().is_hirzebruch()) z_ray = 1;

  ToricRealization out{fan, {}};
  for (std::size_t i = 0; i < p.steps().size(); ++i) {
    const std::size_t cones = fan.rays().size();
    auto touches_z = [&](std::size_t c) {
      return z_ray && (c == *z_ray || (c + 1) % cones == *z_ray);
    };
    const bool on_z = p.steps()[i].locus == Locus::OnZ;
    std::size_t cone = 0;
    if (schedule) {
      cone = (*schedule)[i];
      if (cone >= cones) {
        throw UsageError("schedule entry " + std::to_string(cone) + " out of range");
      }
      if (z_ray && touches_z(cone) != on_z) {
        throw UsageError("cone " + std::to_string(cone) + " does not match the " +
                         (on_z ? "onZ" : "generic") + " tag of step " + std::to_string(i + 1));
      }
    } else if (!z_ray) {
      cone = 0;
    } else if (on_z) {
      const std::size_t right = *z_ray;
      const std::size_t left = (*z_ray + cones - 1) % cones;
      if (original[(right + 1) % cones]) {
        cone = right;
      } else if (original[left]) {
        cone = left;
      } else {
        throw Unsupported("no torus-fixed point left on Z on an unused fiber");
      }
    } else {
      std::optional<std::size_t> fallback;
      std::optional<std::size_t> preferred;
      for (std::size_t c = 0; c < cones && !preferred; ++c) {
        if (touches_z(c)) continue;
        if (!fallback) fallback = c;
        if (original[c] && original[(c + 1) % cones]) preferred = c;
      }
      cone = preferred ? *preferred : *fallback;
    }

    fan = fan.star_subdivide(cone);
    original.insert(original.begin() + static_cast<long>(cone) + 1, false);
    if (!z_ray) {
      z_ray = cone + 1;
      original.assign(fan.rays().size(), true);
    } else if (*z_ray > cone) {
      ++*z_ray;
    }
    out.schedule.push_back(cone);
  }
  out.fan = fan;
  return out;
}

FanModel fan_of(const SurfacePresentation& p,
                const std::optional<std::vector<std::size_t>>& schedule) {
  return toric_realization(p, schedule).fan;
}

// ---------------------------------------------------------------------------

namespace {

std::string mu(unsigned k) { return "mu_" + std::to_string(k); }

/// (Ga)^{n+1} x| (GL2/mu_n), the automorphisms of F_n, n >= 1.
GroupDescription hirzebruch_group(unsigned n) {
  GroupDescription g;
  g.unipotent_dim = n + 1;
  g.reductive_part = "GL2";
  g.reductive_dim = 4;
  g.finite_quotient = n > 1 ? mu(n) : "";
  const std::string reductive = n > 1 ? "(GL2/" + mu(n) + ")" : "GL2";
  g.display = "(Ga)^" + std::to_string(n + 1) + " ⋊ " + reductive;
  return g;
}

/// (Ga)^{k+1} x| ((Ga x| Gm^2)/mu_k): blow-up of F_k at a point of Z_k.
GroupDescription blown_up_hirzebruch_group(unsigned k) {
  GroupDescription g;
  g.unipotent_dim = k + 2;
  g.reductive_part = "Gm^2";
  g.reductive_dim = 2;
  g.finite_quotient = k > 1 ? mu(k) : "";
  const std::string stabilizer =
      k > 1 ? "((Ga ⋊ Gm^2)/" + mu(k) + ")" : std::string("(Ga ⋊ Gm^2)");
  g.display = "(Ga)^" + std::to_string(k + 1) + " ⋊ " + stabilizer;
  return g;
}

}  // namespace

GroupDescription aut0_description(const SurfacePresentation& p) {
  const auto& steps = p.steps();
  if (!p.base().is_hirzebruch()) {
    if (steps.empty()) return {0, "PGL3", 8, "", "PGL3"};
    if (steps.size() <= 2) return aut0_description(rewrite_projective_plane(p).result);
    throw Unsupported("Aut0 description covers P2 with at most two blow-ups");
  }
  const unsigned n = p.base().n;
  if (steps.empty()) {
    if (n == 0) return {0, "PGL2 x PGL2", 6, "", "PGL2 x PGL2"};
    return hirzebruch_group(n);
  }
  if (steps.size() == 1) {
    if (steps[0].locus == Locus::OnZ || n == 0) return blown_up_hirzebruch_group(n);
    return blown_up_hirzebruch_group(n - 1);
  }
  throw Unsupported("Aut0 description covers F_n and its one-point blow-ups");
}

ObstructionReport matsushima_verdict(const SurfacePresentation& p,
                                     const std::optional<std::vector<std::size_t>>& schedule) {
  ObstructionReport report{pretty_print(p), ObstructionVerdict::Silent,
                           toric_realization(p, schedule), {}, {}, {}, {}};
  report.roots = demazure_roots(report.realization.fan);
  const bool reductive = is_reductive(report.realization.fan);
  report.verdict = reductive ? ObstructionVerdict::Silent : ObstructionVerdict::NonReductive;
  try {
    report.description = aut0_description(p);
    report.description_agrees = report.description->reductive() == reductive &&
                                report.description->dimension() == 2 + report.roots.size();
  } catch (const Unsupported&) {
  }
  report.message = reductive ? "Aut0 is reductive: obstruction silent"
                             : "Aut0 is not reductive: cscK metrics are obstructed for every polarization";
  return report;
}

std::string ObstructionReport::to_text() const {
  std::string out;
  out += "presentation: " + presentation + "\n";
  out += "fan: " + realization.fan.str() + "\n";
  out += "demazure_roots: " + std::to_string(roots.size()) + "\n";
  out += "aut0_dimension: " + std::to_string(2 + roots.size()) + "\n";
  if (description) {
    out += "aut0: " + description->display + "\n";
    out += "description_agrees: " + std::string(*description_agrees ? "yes" : "no") + "\n";
  }
  out += std::string("verdict: ") +
         (verdict == ObstructionVerdict::NonReductive ? "NonReductive" : "Silent") + "\n";
  out += message + "\n";
  return out;
}

std::string ObstructionReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["presentation"] = presentation;
  nlohmann::ordered_json rays = nlohmann::ordered_json::array();
  for (const auto& r : realization.fan.rays()) rays.push_back({r.x, r.y});
  doc["fan"] = rays;
  doc["schedule"] = realization.schedule;
  nlohmann::ordered_json root_list = nlohmann::ordered_json::array();
  for (const auto& r : roots) {
    root_list.push_back({{"character", {r.character[0], r.character[1]}},
                         {"distinguished_ray", r.distinguished_ray}});
  }
  doc["demazure_roots"] = root_list;
  doc["aut0_dimension"] = 2 + roots.size();
  if (description) {
    doc["aut0"] = {{"display", description->display},
                   {"unipotent_dim", description->unipotent_dim},
                   {"reductive_part", description->reductive_part},
                   {"finite_quotient", description->finite_quotient},
                   {"dimension", description->dimension()}};
    doc["description_agrees"] = *description_agrees;
  } else {
    doc["aut0"] = nullptr;
  }
  doc["verdict"] = verdict == ObstructionVerdict::NonReductive ? "NonReductive" : "Silent";
  doc["message"] = message;
  return doc.dump(2) + "\n";
}

}  // namespace slopecert

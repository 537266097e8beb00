#pragma once

// Generators and independent reference computations shared by the tests.

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "slopecert/autgroup.hpp"
#include "slopecert/lattice.hpp"
#include "slopecert/rational.hpp"
#include "slopecert/surface.hpp"

namespace testsupport {

using slopecert::Rational;

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// num/den with 1 <= den <= max_den and |num| <= max_num.
inline Rational random_rational(std::mt19937_64& rng, long max_num, long max_den) {
  Rational q(uniform(rng, -max_num, max_num), uniform(rng, 1, max_den));
  q.canonicalize();
  return q;
}

inline Rational random_positive(std::mt19937_64& rng, long max_num, long max_den) {
  Rational q(uniform(rng, 1, max_num), uniform(rng, 1, max_den));
  q.canonicalize();
  return q;
}

/// Uniform rational in (0, top]: top * k / d.
inline Rational random_fraction_of(std::mt19937_64& rng, const Rational& top, long max_den) {
  const long d = uniform(rng, 1, max_den);
  Rational frac(uniform(rng, 1, d), d);
  frac.canonicalize();
  return top * frac;
}

/// Ample (a, b) on F_n: a > 0, b > n a.
inline std::pair<Rational, Rational> random_ample(std::mt19937_64& rng, unsigned n) {
  const Rational a = random_positive(rng, 12, 5);
  const Rational b = n * a + random_positive(rng, 12, 5);
  return {a, b};
}

inline std::string random_presentation_text(std::mt19937_64& rng, long max_steps,
                                            bool allow_p2 = true) {
  const bool p2 = allow_p2 && uniform(rng, 0, 6) == 0;
  std::string text = p2 ? "P2" : "F(" + std::to_string(uniform(rng, 0, 5)) + ")";
  const long steps = uniform(rng, 0, max_steps);
  for (long i = 0; i < steps; ++i) {
    const bool on_z = (!p2 || i > 0) && uniform(rng, 0, 1) == 1;
    const std::string sep[] = {"; ", ";", " ;\n  ", " ; "};
    text += sep[uniform(rng, 0, 3)];
    text += on_z ? "blowup onZ" : "blowup generic";
  }
  return text;
}

inline slopecert::DivisorClass random_class(std::mt19937_64& rng,
                                            const slopecert::LatticePtr& lattice) {
  std::vector<Rational> coeffs;
  for (std::size_t i = 0; i < lattice->rank(); ++i) coeffs.push_back(random_rational(rng, 9, 4));
  return slopecert::DivisorClass(lattice, coeffs);
}

/// Signature by Jacobi's rule on leading principal minors, after a random
/// unimodular congruence that makes every minor nonzero.
inline slopecert::Inertia jacobi_signature(const slopecert::IntersectionLattice& lat,
                                           std::mt19937_64& rng) {
  const std::size_t r = lat.rank();
  using Matrix = std::vector<std::vector<Rational>>;
  auto determinant = [](Matrix m) {
    const std::size_t k = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t pivot = c;
      while (pivot < k && m[pivot][c] == 0) ++pivot;
      if (pivot == k) return Rational(0);
      if (pivot != c) {
        std::swap(m[pivot], m[c]);
        det = -det;
      }
      det *= m[c][c];
      for (std::size_t i = c + 1; i < k; ++i) {
        const Rational f = m[i][c] / m[c][c];
        for (std::size_t j = c; j < k; ++j) m[i][j] -= f * m[c][j];
      }
    }
    return det;
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // P = lower * upper, both unitriangular; a triangular P alone would
    // leave the leading minors unchanged.
    Matrix lower(r, std::vector<Rational>(r, 0));
    Matrix upper(r, std::vector<Rational>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
      lower[i][i] = upper[i][i] = 1;
      for (std::size_t j = i + 1; j < r; ++j) {
        upper[i][j] = uniform(rng, -2, 2);
        lower[j][i] = uniform(rng, -2, 2);
      }
    }
    Matrix p(r, std::vector<Rational>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t k = 0; k < r; ++k) p[i][j] += lower[i][k] * upper[k][j];
      }
    }
    Matrix g(r, std::vector<Rational>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        Rational s = 0;
        for (std::size_t a = 0; a < r; ++a) {
          for (std::size_t b = 0; b < r; ++b) s += p[a][i] * lat.gram(a, b) * p[b][j];
        }
        g[i][j] = s;
      }
    }
    std::vector<Rational> minors{Rational(1)};
    bool ok = true;
    for (std::size_t k = 1; k <= r && ok; ++k) {
      Matrix sub(k, std::vector<Rational>(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = g[i][j];
      }
      minors.push_back(determinant(sub));
      ok = minors.back() != 0;
    }
    if (!ok) continue;
    slopecert::Inertia out;
    for (std::size_t k = 1; k <= r; ++k) {
      if (sgn(minors[k]) == sgn(minors[k - 1])) {
        ++out.positive;
      } else {
        ++out.negative;
      }
    }
    return out;
  }
  return {};
}

/// Characters in a box satisfying the root condition for some ray.
inline std::set<std::pair<std::array<long, 2>, std::size_t>> brute_force_roots(
    const slopecert::FanModel& fan, long box) {
  std::set<std::pair<std::array<long, 2>, std::size_t>> out;
  const auto& rays = fan.rays();
  for (long x = -box; x <= box; ++x) {
    for (long y = -box; y <= box; ++y) {
      for (std::size_t d = 0; d < rays.size(); ++d) {
        bool ok = x * rays[d].x + y * rays[d].y == -1;
        for (std::size_t j = 0; j < rays.size() && ok; ++j) {
          if (j != d) ok = x * rays[j].x + y * rays[j].y >= 0;
        }
        if (ok) out.insert({{x, y}, d});
      }
    }
  }
  return out;
}

/// DF on F_0 with L = aZ + bF collapses to 2 lambda b (1 - lambda / a).
inline Rational quadric_df(const Rational& a, const Rational& b, const Rational& lambda) {
  return 2 * lambda * b * (1 - lambda / a);
}

/// Slope of aZ + bF on F_n, expanded by hand.
inline Rational hirzebruch_slope(unsigned n, const Rational& a, const Rational& b) {
  const Rational nn = n;
  return ((2 - nn) * a + 2 * b) / (2 * a * b - a * a * nn);
}

/// (2 a^2 n / 3)(a + n a - 2 b)/(2 b - n a).
inline Rational endpoint_closed_form(unsigned n, const Rational& a, const Rational& b) {
  const Rational nn = n;
  return Rational(2, 3) * a * a * nn * (a + nn * a - 2 * b) / (2 * b - nn * a);
}

}  // namespace testsupport

#pragma once

// Earlier deformed operations from the nonextensive-statistics
// literature, kept for comparison against the tau-conjugated product:
//
//   * the q-logarithm ln_q x = (x^(1-q) - 1)/(1-q),
//   * the Borges product, in two variants: as commonly printed,
//     (x^(1-q) + y^(1-q))^(1/(1-q)), and the corrected form carrying a
//     "-1" inside the parenthesis, under which ln_q is exactly additive,
//   * the Lobao product, a closed-form deformed multiplication that is
//     distributive over oplus and agrees numerically with otimes,
//   * scan drivers for the numeric-equivalence and non-distributivity
//     demonstrations.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdeform/qcore.hpp"
#include "qdeform/random.hpp"

namespace qdeform {

// ln_q x = (x^(1-q) - 1)/(1-q) for x > 0; natural logarithm at q = 1.
inline double ln_q(QParam p, double x) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw std::domain_error("ln_q: argument must be positive");
  }
  if (p.classical()) return std::log(x);
  return std::expm1(p.u() * std::log(x)) / p.u();
}

enum class BorgesVariant { corrected, printed };

inline const char* name(BorgesVariant v) {
  return v == BorgesVariant::corrected ? "corrected" : "printed";
}

// Borges product on positive reals. The corrected variant evaluates
// (x^(1-q) + y^(1-q) - 1)^(1/(1-q)) and satisfies
// ln_q(x (*) y) = ln_q x + ln_q y; the printed variant drops the "-1"
// and picks up a constant additivity defect of 1/(1-q). The printed
// form diverges as q -> 1 and has no value there.
inline double borges_otimes(QParam p, double x, double y,
                            BorgesVariant variant = BorgesVariant::corrected) {
  if (!std::isfinite(x) || !(x > 0.0) || !std::isfinite(y) || !(y > 0.0)) {
    throw std::domain_error("borges_otimes: arguments must be positive");
  }
  if (p.classical()) {
    if (variant == BorgesVariant::printed) {
      throw std::domain_error("borges_otimes: printed form has no q = 1 value");
    }
    return x * y;
  }
  const double u = p.u();
  const double t = std::expm1(u * std::log(x)) + std::expm1(u * std::log(y));
  double r;
  if (variant == BorgesVariant::corrected) {
    if (!(t > -1.0)) {
      throw std::domain_error(
          "borges_otimes: x^(1-q) + y^(1-q) - 1 must be positive");
    }
    r = std::exp(std::log1p(t) / u);
  } else {
    r = std::exp(std::log(2.0 + t) / u);
  }
  if (!std::isfinite(r)) {
    throw std::overflow_error("borges_otimes: result overflows");
  }
  return r;
}

// Lobao product,
//   x <> y = ((2-q)^( log(1+(1-q)x) log(1+(1-q)y) / log(2-q)^2 ) - 1)/(1-q),
// defined on R_q x R_q; ordinary multiplication at q = 1.
inline double lobao_diamond(QParam p, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::domain_error("lobao_diamond: arguments must be finite");
  }
  if (p.classical()) return x * y;
  const double u = p.u();
  if (std::fma(u, x, 1.0) <= 0.0 || std::fma(u, y, 1.0) <= 0.0) {
    throw std::domain_error("lobao_diamond: argument outside R_q");
  }
  // exponent * log(2-q), grouped to stay accurate for small u
  const double e = std::log1p(u * x) * std::log1p(u * y) / p.log_base();
  if (e > detail::kMaxExpArg) {
    throw std::overflow_error("lobao_diamond: result overflows");
  }
  return std::expm1(e) / u;
}

// ---------------------------------------------------------------------
// Numeric equivalence of the Lobao product and tau-conjugated
// multiplication, scanned over seeded samples with pre-images in
// [-5, 5].

struct EquivalenceReport {
  std::vector<double> q_grid;
  std::size_t samples_per_q = 0;
  std::uint64_t seed = 0;
  double max_rel_deviation = 0.0;
  // witness of the maximum: q and the two R_q operands
  double worst_q = 0.0;
  double worst_x = 0.0;
  double worst_y = 0.0;
};

inline EquivalenceReport equivalence_scan(const std::vector<double>& q_grid,
                                          std::size_t samples,
                                          std::uint64_t seed) {
  EquivalenceReport rep;
  rep.q_grid = q_grid;
  rep.samples_per_q = samples;
  rep.seed = seed;
  UniformSampler rng(seed);
  for (double qv : q_grid) {
    const QParam p(qv);
    for (std::size_t i = 0; i < samples; ++i) {
      const double a = rng.uniform(-5.0, 5.0);
      const double b = rng.uniform(-5.0, 5.0);
      const QReal x = tau(p, a);
      const QReal y = tau(p, b);
      const double via_diamond = lobao_diamond(p, x.value(), y.value());
      const double via_tau = otimes(x, y).value();
      const double scale =
          std::max(std::fabs(via_diamond), std::fabs(via_tau));
      const double dev =
          scale == 0.0 ? 0.0 : std::fabs(via_diamond - via_tau) / scale;
      if (dev > rep.max_rel_deviation) {
        rep.max_rel_deviation = dev;
        rep.worst_q = qv;
        rep.worst_x = x.value();
        rep.worst_y = y.value();
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------
// A concrete failure of distributivity for the Borges product: a triple
// (x, y, z) with x (*) (y (+) z) != (x (*) y) (+) (x (*) z) by a
// relative defect above 1e-3. The Lobao product passes the same triples.

struct DistributivityWitness {
  double x = 0, y = 0, z = 0;
  double lhs = 0, rhs = 0;
  double defect = 0;  // |lhs - rhs| / |lhs|
  BorgesVariant variant = BorgesVariant::corrected;
};

inline DistributivityWitness non_distributivity_witness(
    QParam p, BorgesVariant variant = BorgesVariant::corrected) {
  if (p.classical()) {
    throw std::domain_error(
        "non_distributivity_witness: ordinary arithmetic distributes at q = 1");
  }
  const double u = p.u();
  const auto scalar_oplus = [u](double a, double b) { return a + b + u * a * b; };

  const double grid[] = {1.5, 2.0, 3.0, 4.0, 6.0, 9.0, 12.0, 16.0};
  std::vector<std::array<double, 3>> candidates = {{4.0, 9.0, 16.0}};
  for (double x : grid)
    for (double y : grid)
      for (double z : grid) candidates.push_back({x, y, z});

  for (const auto& [x, y, z] : candidates) {
    try {
      const double lhs = borges_otimes(p, x, scalar_oplus(y, z), variant);
      const double rhs = scalar_oplus(borges_otimes(p, x, y, variant),
                                      borges_otimes(p, x, z, variant));
      if (lhs == 0.0) continue;
      const double defect = std::fabs(lhs - rhs) / std::fabs(lhs);
      if (defect > 1e-3) return {x, y, z, lhs, rhs, defect, variant};
    } catch (const std::domain_error&) {
      continue;  // candidate outside the variant's domain
    }
  }
  throw std::runtime_error(
      "non_distributivity_witness: no witness found (unexpected for q < 1)");
}

}  // namespace qdeform

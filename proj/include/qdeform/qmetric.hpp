#pragma once

// Metric and measure experiments for the deformation map:
//
//   * distance distortion and the failure of the Lipschitz property,
//   * weak quasisymmetry scans under two target metrics (tau is weakly
//     1-quasisymmetric into (R_q, q-distance); under the Euclidean
//     target the triple (0, d, -d) stretches by (2-q)^d, unbounded),
//   * an empirical eta-quasisymmetry profile,
//   * the pullback measure of intervals under tau and its doubling
//     ratio (closed form (2-q)^r + (2-q)^-r, center independent),
//   * middle-thirds Cantor points and box-counting dimension under the
//     snowflake metric d^epsilon.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "qdeform/qcore.hpp"
#include "qdeform/random.hpp"

namespace qdeform {

struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw std::domain_error("Interval: need finite lo < hi");
    }
  }

  double width() const noexcept { return hi - lo; }
};

// (|x - y|, tau_q(|x - y|)): the two distances differ for q < 1 except
// at the fixed points of tau.
inline std::pair<double, double> distance_distortion(QParam p, double x,
                                                     double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::domain_error("distance_distortion: arguments must be finite");
  }
  const double d = std::fabs(x - y);
  return {d, tau(p, d).value()};
}

// A distance d with tau_q(d)/d > C, witnessing that tau_q is not
// C-Lipschitz. Exists for every C when q < 1 because tau grows
// exponentially; no witness at q = 1.
inline double lipschitz_witness(QParam p, double C) {
  if (!std::isfinite(C) || !(C > 0.0)) {
    throw std::domain_error("lipschitz_witness: C must be positive");
  }
  if (p.classical()) {
    throw std::domain_error(
        "lipschitz_witness: the identity map is Lipschitz; no witness at q = 1");
  }
  const auto ratio = [&](double d) { return tau(p, d).value() / d; };
  double lo = 0.0, hi = 1.0;
  while (ratio(hi) <= C) {
    lo = hi;
    hi *= 2.0;  // tau overflow aborts the search for absurd C
  }
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) > C ? hi : lo) = mid;
  }
  return hi;
}

enum class QSTarget { euclidean, qdist };

inline const char* name(QSTarget t) {
  return t == QSTarget::euclidean ? "euclidean" : "qdist";
}

// Scan result; the witness triple reproduces max_ratio.
struct QSReport {
  std::string convention;  // "euclidean" | "qdist"
  double max_ratio = 0.0;
  std::array<double, 3> witness{};  // pre-images (x, y, z), |x-y| <= |x-z|
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

inline double qs_image_ratio(QParam p, QSTarget target, double x, double y,
                             double z) {
  double num, den;
  if (target == QSTarget::euclidean) {
    num = std::fabs(tau(p, x).value() - tau(p, y).value());
    den = std::fabs(tau(p, x).value() - tau(p, z).value());
  } else {
    num = tau(p, std::fabs(x - y)).value();
    den = tau(p, std::fabs(x - z)).value();
  }
  return num / den;
}

// Samples triples (x, y, z) with |x-y| <= |x-z| (enforced by swapping)
// and reports the largest image-distance ratio under the chosen target
// metric. Deterministic for a fixed seed.
inline QSReport weak_qs_scan(QParam p, Interval domain, std::size_t samples,
                             std::uint64_t seed, QSTarget target) {
  if (samples < 1) throw std::domain_error("weak_qs_scan: samples must be >= 1");
  UniformSampler rng(seed);
  QSReport rep;
  rep.convention = name(target);
  rep.samples = samples;
  rep.seed = seed;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = rng.uniform(domain.lo, domain.hi);
    double y = rng.uniform(domain.lo, domain.hi);
    double z = rng.uniform(domain.lo, domain.hi);
    if (std::fabs(x - y) > std::fabs(x - z)) std::swap(y, z);
    if (x == z) continue;  // degenerate denominator
    const double r = qs_image_ratio(p, target, x, y, z);
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.witness = {x, y, z};
    }
  }
  return rep;
}

struct EtaRow {
  double t;        // upper edge of the ratio bucket
  double eta_hat;  // max image ratio observed for ratios up to t
};

// Empirical profile of the eta-quasisymmetry modulus over a lattice of
// triples: for bucketed pre-image ratio t = |x-y|/|x-z|, the largest
// Euclidean-target image ratio seen at ratios up to t. The cumulative
// maximum makes the profile nondecreasing by construction.
inline std::vector<EtaRow> eta_estimate(QParam p, Interval domain,
                                        std::size_t grid) {
  if (grid < 4 || grid > 512) {
    throw std::domain_error("eta_estimate: grid must lie in [4, 512]");
  }
  const double step = domain.width() / static_cast<double>(grid - 1);
  std::vector<double> xs(grid), ts(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    xs[i] = domain.lo + step * static_cast<double>(i);
    ts[i] = tau(p, xs[i]).value();
  }

  const auto for_each_triple = [&](auto&& visit) {
    for (std::size_t ix = 0; ix < grid; ++ix) {
      for (std::size_t iy = 0; iy < grid; ++iy) {
        for (std::size_t iz = 0; iz < grid; ++iz) {
          if (iz == ix) continue;
          const double t =
              std::fabs(xs[ix] - xs[iy]) / std::fabs(xs[ix] - xs[iz]);
          const double r =
              std::fabs(ts[ix] - ts[iy]) / std::fabs(ts[ix] - ts[iz]);
          visit(t, r);
        }
      }
    }
  };

  double t_max = 0.0;
  for_each_triple([&](double t, double) { t_max = std::max(t_max, t); });
  if (t_max == 0.0) throw std::logic_error("eta_estimate: degenerate lattice");

  constexpr std::size_t kBuckets = 16;
  std::vector<double> bucket_max(kBuckets, 0.0);
  for_each_triple([&](double t, double r) {
    auto b = static_cast<std::size_t>(std::ceil(t / t_max * kBuckets));
    b = std::min(b == 0 ? std::size_t{1} : b, kBuckets) - 1;
    bucket_max[b] = std::max(bucket_max[b], r);
  });

  std::vector<EtaRow> rows;
  rows.reserve(kBuckets);
  double running = 0.0;
  for (std::size_t b = 0; b < kBuckets; ++b) {
    running = std::max(running, bucket_max[b]);
    rows.push_back({t_max * static_cast<double>(b + 1) / kBuckets, running});
  }
  return rows;
}

// Pullback of Lebesgue measure under tau: mu([a,b]) = tau(b) - tau(a).
inline double pullback_measure(QParam p, Interval I) {
  return tau(p, I.hi).value() - tau(p, I.lo).value();
}

// mu(B_2r(x)) / mu(B_r(x)). Center independent with closed form
// (2-q)^r + (2-q)^-r, which grows without bound in r for q < 1: the
// pullback measure is doubling on bounded ranges of r only.
inline double doubling_ratio(QParam p, double x, double r) {
  if (!std::isfinite(x) || !std::isfinite(r) || !(r > 0.0)) {
    throw std::domain_error("doubling_ratio: need finite x and r > 0");
  }
  return pullback_measure(p, Interval(x - 2.0 * r, x + 2.0 * r)) /
         pullback_measure(p, Interval(x - r, x + r));
}

// Left endpoints of the 2^depth middle-thirds Cantor intervals of
// length 3^-depth in [0, 1], sorted.
inline std::vector<double> cantor_points(int depth) {
  if (depth < 1 || depth > 14) {
    throw std::domain_error("cantor_points: depth must lie in [1, 14]");
  }
  std::vector<double> pts{0.0};
  for (int d = 0; d < depth; ++d) {
    std::vector<double> next;
    next.reserve(2 * pts.size());
    for (double x : pts) next.push_back(x / 3.0);
    for (double x : pts) next.push_back(x / 3.0 + 2.0 / 3.0);
    pts = std::move(next);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

struct BoxCountReport {
  double epsilon = 1.0;
  std::vector<double> scales;        // d^epsilon diameters, decreasing
  std::vector<std::size_t> counts;   // boxes per scale, nondecreasing
  double dimension = 0.0;            // fitted slope
  double residual = 0.0;             // rms residual of the log-log fit
};

// Dyadic default: delta_k = 2^-k from k = 2 down to the resolution the
// point set supports (Euclidean boxes no smaller than ~3^(1-depth)),
// with at least four scales.
inline std::vector<double> default_snowflake_scales(double epsilon, int depth) {
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw std::domain_error("default_snowflake_scales: epsilon must be in (0, 1]");
  }
  const double k_hi_real = epsilon * static_cast<double>(depth - 1) *
                           std::log2(3.0);
  const int k_lo = 2;
  const int k_hi = std::max(k_lo + 3, static_cast<int>(std::floor(k_hi_real)));
  std::vector<double> scales;
  for (int k = k_lo; k <= k_hi; ++k) scales.push_back(std::ldexp(1.0, -k));
  return scales;
}

// Box counting in the snowflake metric d^epsilon: a set of d^epsilon
// diameter delta is a Euclidean interval of length delta^(1/epsilon),
// so boxes of size delta^(1/epsilon) are counted against log(1/delta).
// Box sizes are snapped down to powers of two, which keeps successive
// grids nested and the counts monotone (exact for the dyadic defaults).
// The fitted slope estimates the d^epsilon box dimension, i.e.
// (Euclidean dimension)/epsilon.
inline BoxCountReport snowflake_dimension(std::span<const double> points,
                                          double epsilon,
                                          std::span<const double> scales) {
  if (points.empty()) {
    throw std::domain_error("snowflake_dimension: empty point set");
  }
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw std::domain_error("snowflake_dimension: epsilon must be in (0, 1]");
  }
  if (scales.size() < 4) {
    throw std::domain_error("snowflake_dimension: need at least 4 scales");
  }
  for (std::size_t i = 0; i + 1 < scales.size(); ++i) {
    if (!(scales[i] > scales[i + 1])) {
      throw std::domain_error(
          "snowflake_dimension: scales must be strictly decreasing");
    }
  }
  if (!(scales.back() > 0.0) || !std::isfinite(scales.front())) {
    throw std::domain_error("snowflake_dimension: scales must be positive");
  }

  BoxCountReport rep;
  rep.epsilon = epsilon;
  rep.scales.assign(scales.begin(), scales.end());

  for (double delta : scales) {
    const int j = static_cast<int>(
        std::ceil(std::log2(1.0 / delta) / epsilon - 1e-9));
    if (j > 60 || j < -60) {
      throw std::domain_error("snowflake_dimension: scale out of range");
    }
    std::unordered_set<long long> boxes;
    for (double x : points) {
      boxes.insert(static_cast<long long>(std::floor(std::ldexp(x, j))));
    }
    rep.counts.push_back(boxes.size());
  }

  for (std::size_t i = 0; i + 1 < rep.counts.size(); ++i) {
    if (rep.counts[i] > rep.counts[i + 1]) {
      throw std::logic_error("snowflake_dimension: counts not monotone");
    }
  }

  const bool all_equal =
      std::all_of(rep.counts.begin(), rep.counts.end(),
                  [&](std::size_t c) { return c == rep.counts.front(); });
  if (all_equal && rep.counts.front() > 1) {
    throw std::domain_error(
        "snowflake_dimension: degenerate fit, box counts constant across scales");
  }

  // least squares on (log 1/delta, log N)
  const auto n = static_cast<double>(rep.counts.size());
  double mx = 0.0, my = 0.0;
  std::vector<double> xs_fit, ys_fit;
  for (std::size_t i = 0; i < rep.counts.size(); ++i) {
    xs_fit.push_back(std::log(1.0 / rep.scales[i]));
    ys_fit.push_back(std::log(static_cast<double>(rep.counts[i])));
    mx += xs_fit.back();
    my += ys_fit.back();
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs_fit.size(); ++i) {
    sxx += (xs_fit[i] - mx) * (xs_fit[i] - mx);
    sxy += (xs_fit[i] - mx) * (ys_fit[i] - my);
  }
  rep.dimension = sxy / sxx;
  const double intercept = my - rep.dimension * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs_fit.size(); ++i) {
    const double e = ys_fit[i] - (rep.dimension * xs_fit[i] + intercept);
    ss += e * e;
  }
  rep.residual = std::sqrt(ss / n);
  return rep;
}

inline BoxCountReport snowflake_dimension(std::span<const double> points,
                                          double epsilon, int depth) {
  const auto scales = default_snowflake_scales(epsilon, depth);
  return snowflake_dimension(points, epsilon, scales);
}

}  // namespace qdeform

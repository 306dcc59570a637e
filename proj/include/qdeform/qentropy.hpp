#pragma once

// Discrete Tsallis entropy S_q = (1 - sum p_i^q)/(q - 1) and its exact
// composition law for independent systems,
//
//   S_q(A+B) = S_q(A) + S_q(B) + (1-q) S_q(A) S_q(B),
//
// the physical origin of the generalized addition. At q = 1 the
// Boltzmann/Gibbs/Shannon limit -sum p_i ln p_i applies. Zero-probability
// states are excluded from the power sum, so S_0 is the support size
// minus one and a point mass has zero entropy at every q.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdeform/qcore.hpp"

namespace qdeform {

// Finite probability vector: entries nonnegative, total within 1e-12 of
// one. Out-of-tolerance input is an error, never silently renormalized.
class DiscreteDist {
 public:
  explicit DiscreteDist(std::vector<double> probabilities)
      : p_(std::move(probabilities)) {
    if (p_.empty()) {
      throw std::invalid_argument("DiscreteDist: empty distribution");
    }
    double sum = 0.0;
    for (double x : p_) {
      if (!std::isfinite(x) || x < 0.0) {
        throw std::invalid_argument(
            "DiscreteDist: probabilities must be finite and nonnegative");
      }
      sum += x;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("DiscreteDist: probabilities sum to " +
                                  std::to_string(sum) + ", not 1");
    }
  }

  const std::vector<double>& probabilities() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }

 private:
  std::vector<double> p_;
};

inline double tsallis_entropy(QParam p, const DiscreteDist& d) {
  if (p.classical()) {
    double s = 0.0;
    for (double x : d.probabilities()) {
      if (x > 0.0) s -= x * std::log(x);
    }
    return s;
  }
  double power_sum = 0.0;
  for (double x : d.probabilities()) {
    if (x > 0.0) power_sum += std::pow(x, p.q());
  }
  return (1.0 - power_sum) / (p.q() - 1.0);
}

// Joint distribution of independent systems: the flattened outer
// product, a-major.
inline DiscreteDist product_dist(const DiscreteDist& a, const DiscreteDist& b) {
  std::vector<double> joint;
  joint.reserve(a.size() * b.size());
  for (double x : a.probabilities()) {
    for (double y : b.probabilities()) joint.push_back(x * y);
  }
  return DiscreteDist(std::move(joint));
}

// |S_q(A+B) - S_q(A) (+) S_q(B)|. The composition law is an identity,
// so anything beyond floating noise signals a defect.
inline double composition_check(QParam p, const DiscreteDist& a,
                                const DiscreteDist& b) {
  const double sa = tsallis_entropy(p, a);
  const double sb = tsallis_entropy(p, b);
  const double joint = tsallis_entropy(p, product_dist(a, b));
  const double composed = sa + sb + p.u() * sa * sb;
  return std::fabs(joint - composed);
}

}  // namespace qdeform

#pragma once

// Floating-point arithmetic on the deformed real line R_q.
//
// The deformation map
//
//     tau_q(x) = ((2-q)^x - 1) / (1-q),        q in [0, 1)
//     tau_1(x) = x
//
// carries ordinary addition and multiplication over to R_q:
//
//     x (+) y = x + y + (1-q) x y
//     x (*) y = tau_q( tau_inv(x) * tau_inv(y) )
//
// making tau_q a field isomorphism R -> R_q. This header holds the map,
// its inverse, the induced field operations, the order, the q-absolute
// value / q-distance, and the EXP_q / LOG_q pair (the tau-images of exp
// and ln -- not the Tsallis q-exponential/q-logarithm, for which see
// qcompat.hpp).

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>

namespace qdeform {

// |a - b| <= max(rtol * max(|a|,|b|), floor). Values in R_q span many
// orders of magnitude, so every tolerance is relative with an absolute
// floor.
inline bool almost_equal(double a, double b, double rtol,
                         double floor_ = 1e-12) {
  const double diff = std::fabs(a - b);
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return diff <= std::max(rtol * scale, floor_);
}

// The nonextensivity parameter q, restricted to [0, 1]. Derived
// quantities: the base s = 2-q, u = 1-q, and L = ln(2-q).
class QParam {
 public:
  explicit QParam(double q) : q_(q) {
    if (!std::isfinite(q) || q < 0.0 || q > 1.0) {
      throw std::domain_error("QParam: q must lie in [0, 1], got " +
                              std::to_string(q));
    }
  }

  double q() const noexcept { return q_; }
  double s() const noexcept { return 2.0 - q_; }
  double u() const noexcept { return 1.0 - q_; }

  // ln(2-q) evaluated as log1p(1-q); exact 0 only at q = 1.
  double log_base() const noexcept { return std::log1p(1.0 - q_); }

  // q = 1 reduces every operation to ordinary arithmetic.
  bool classical() const noexcept { return q_ == 1.0; }

  friend bool operator==(const QParam& a, const QParam& b) noexcept {
    return a.q_ == b.q_;
  }
  friend bool operator!=(const QParam& a, const QParam& b) noexcept {
    return !(a == b);
  }

 private:
  double q_;
};

// An element of R_q: the image value itself, tagged with its parameter.
// For q < 1 the image of tau_q is the open half-line above the additive
// singularity -1/(1-q); construction enforces 1 + (1-q) value > 0.
class QReal {
 public:
  QReal(QParam param, double value) : param_(param), value_(value) {
    if (!std::isfinite(value)) {
      throw std::domain_error("QReal: value must be finite");
    }
    if (!param.classical() && std::fma(param.u(), value, 1.0) <= 0.0) {
      throw std::domain_error(
          "QReal: value " + std::to_string(value) +
          " is not above the additive singularity -1/(1-q)");
    }
  }

  const QParam& param() const noexcept { return param_; }
  double value() const noexcept { return value_; }

 private:
  QParam param_;
  double value_;
};

namespace detail {

// expm1 overflows just above this; tau rejects larger exponents.
inline constexpr double kMaxExpArg = 709.0;

inline void require_same_param(const QReal& a, const QReal& b,
                               const char* op) {
  if (a.param() != b.param()) {
    throw std::invalid_argument(std::string(op) +
                                ": operands carry different q");
  }
}

}  // namespace detail

// tau_q(x) = ((2-q)^x - 1)/(1-q), evaluated as expm1(x ln(2-q))/(1-q).
// The naive power form loses all significant digits as q -> 1.
inline QReal tau(QParam p, double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("tau: argument must be finite");
  }
  if (p.classical()) return QReal(p, x);
  const double arg = x * p.log_base();
  if (arg > detail::kMaxExpArg) {
    throw std::overflow_error("tau: (2-q)^x overflows at x = " +
                              std::to_string(x));
  }
  const double r = std::expm1(arg);
  if (r == -1.0) {
    // x so negative that the image rounds onto the singularity itself
    throw std::underflow_error(
        "tau: image indistinguishable from -1/(1-q) at x = " +
        std::to_string(x));
  }
  return QReal(p, r / p.u());
}

// Inverse map: y |-> ln(1 + (1-q) y) / ln(2-q). Defined on the image of
// tau_q only; the identity at q = 1.
inline double tau_inv(QParam p, double y) {
  if (!std::isfinite(y)) {
    throw std::domain_error("tau_inv: argument must be finite");
  }
  if (p.classical()) return y;
  const double w = std::fma(p.u(), y, 1.0);
  if (w <= 0.0) {
    throw std::domain_error("tau_inv: " + std::to_string(y) +
                            " is not an element of R_q");
  }
  const double r = p.u() * y;
  // log1p is the accurate route for small r; near the singularity the
  // fma-computed 1 + u y avoids rounding onto log(0).
  return (r > -0.5 ? std::log1p(r) : std::log(w)) / p.log_base();
}

inline double tau_inv(const QReal& a) { return tau_inv(a.param(), a.value()); }

// Generalized addition, x (+) y = x + y + (1-q) x y.
inline QReal oplus(const QReal& a, const QReal& b) {
  detail::require_same_param(a, b, "oplus");
  const QParam p = a.param();
  return QReal(p, a.value() + b.value() + p.u() * a.value() * b.value());
}

// Additive opposite: (-)a = -a / (1 + (1-q) a), an involution.
inline QReal neg(const QReal& a) {
  const QParam p = a.param();
  return QReal(p, -a.value() / std::fma(p.u(), a.value(), 1.0));
}

inline QReal ominus(const QReal& a, const QReal& b) {
  detail::require_same_param(a, b, "ominus");
  return oplus(a, neg(b));
}

// Generalized multiplication by tau-conjugation; associative,
// commutative, unit 1, distributive over oplus.
inline QReal otimes(const QReal& a, const QReal& b) {
  detail::require_same_param(a, b, "otimes");
  return tau(a.param(), tau_inv(a) * tau_inv(b));
}

inline QReal oslash(const QReal& a, const QReal& b) {
  detail::require_same_param(a, b, "oslash");
  if (b.value() == 0.0) {
    throw std::domain_error("oslash: division by 0_q");
  }
  return tau(a.param(), tau_inv(a) / tau_inv(b));
}

// q-distance |x_q (-) y_q|_q = tau_q(|x - y|); zero iff the operands
// coincide, symmetric, but not a metric in the triangle-inequality
// sense (tau is superadditive on distances for q < 1).
inline QReal q_dist(const QReal& a, const QReal& b) {
  detail::require_same_param(a, b, "q_dist");
  return tau(a.param(), std::fabs(tau_inv(a) - tau_inv(b)));
}

inline QReal q_abs(const QReal& a) {
  return q_dist(a, QReal(a.param(), 0.0));
}

// Total order on R_q. tau_q is strictly increasing on [0,1], so the
// order of the stored values coincides with the order of pre-images.
inline std::strong_ordering q_compare(const QReal& a, const QReal& b) {
  detail::require_same_param(a, b, "q_compare");
  if (a.value() < b.value()) return std::strong_ordering::less;
  if (a.value() > b.value()) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// EXP_q = tau_q . exp . tau_inv and LOG_q = tau_q . ln . tau_inv,
// mutually inverse on R_q (resp. R_q^+).
inline QReal exp_q(const QReal& a) {
  const double e = std::exp(tau_inv(a));
  if (!std::isfinite(e)) {
    throw std::overflow_error("exp_q: exponential overflows");
  }
  return tau(a.param(), e);
}

inline QReal log_q(const QReal& a) {
  if (!(a.value() > 0.0)) {
    throw std::domain_error("log_q: argument must lie in R_q^+");
  }
  return tau(a.param(), std::log(tau_inv(a)));
}

}  // namespace qdeform

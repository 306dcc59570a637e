#pragma once

// Exact q-integer algebra. Everything here runs in arbitrary-precision
// rational arithmetic and serves as the oracle for the floating layer in
// qcore.hpp:
//
//   * the first-order recursion n_q = (2-q)(n-1)_q + 1 and the closed
//     form n_q = ((2-q)^n - 1)/(1-q),
//   * opposites (-)n_q = -n_q/(2-q)^n and inverses (n^-1)_q,
//   * the polynomial-ring picture: nu maps n_q to its expansion in
//     u = 1-q, pi projects onto the leading monomial, sigma completes a
//     monomial back to a full expansion, and formal_otimes realizes the
//     deformed product on Z_q through exact exponent bookkeeping,
//   * an erratum report for the second-order-recursion route, whose
//     printed sign and discriminant are inconsistent with the rest of
//     the construction.

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdeform/exact.hpp"
#include "qdeform/qcore.hpp"

namespace qdeform {

namespace detail {

inline void require_unit_rational(const BigRat& q, const char* where) {
  if (q < 0 || q > 1) {
    throw std::domain_error(std::string(where) + ": q must lie in [0, 1]");
  }
}

}  // namespace detail

// x (+) y = x + y + (1-q) x y in exact arithmetic.
inline BigRat oplus_exact(const BigRat& x, const BigRat& y, const BigRat& q) {
  return x + y + (BigRat(1) - q) * x * y;
}

// n_q by iterating the first-order recursion from 1_q = 1.
inline BigRat q_integer_recursive(long n, const BigRat& q) {
  if (n < 1) throw std::domain_error("q_integer_recursive: n must be >= 1");
  detail::require_unit_rational(q, "q_integer_recursive");
  const BigRat s = BigRat(2) - q;
  BigRat r = 1;
  for (long i = 2; i <= n; ++i) r = s * r + 1;
  return r;
}

// n_q = ((2-q)^n - 1)/(1-q); any integer n, with the q = 1 limit n.
inline BigRat q_integer_closed(long n, const BigRat& q) {
  detail::require_unit_rational(q, "q_integer_closed");
  if (q == 1) return BigRat(n);
  return (rational_pow(BigRat(2) - q, n) - 1) / (BigRat(1) - q);
}

// (-)n_q = -n_q / (2-q)^n for n >= 0; coincides with (-n)_q.
inline BigRat q_opposite(long n, const BigRat& q) {
  if (n < 0) throw std::domain_error("q_opposite: n must be >= 0");
  detail::require_unit_rational(q, "q_opposite");
  return -q_integer_closed(n, q) / rational_pow(BigRat(2) - q, n);
}

// (n^-1)_q = ((2-q)^(1/n) - 1)/(1-q) = tau_q(1/n); irrational in
// general, so this one lives in floating point.
inline double q_inverse(long n, QParam p) {
  if (n == 0) throw std::domain_error("q_inverse: n must be nonzero");
  return tau(p, 1.0 / static_cast<double>(n)).value();
}

// (n/m)_q = tau_q(n/m).
inline double q_rational(long n, long m, QParam p) {
  if (m == 0) throw std::domain_error("q_rational: zero denominator");
  return tau(p, static_cast<double>(n) / static_cast<double>(m)).value();
}

// A q-rational in symbolic form: the reduced pair n/m naming the element
// (n/m)_q.
class QRational {
 public:
  QRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("QRational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  double value(QParam p) const {
    return tau(p, BigRat(num_, den_).convert_to<double>()).value();
  }

  friend bool operator==(const QRational& a, const QRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  BigInt num_;
  BigInt den_;
};

// Integer-coefficient polynomial in u = 1-q, coefficient k multiplying
// u^k. Canonical form: trailing zero coefficients stripped, the zero
// polynomial stored empty.
class UPoly {
 public:
  UPoly() = default;

  explicit UPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  static UPoly monomial(BigInt coeff, long degree) {
    if (degree < 0) throw std::domain_error("UPoly: negative degree");
    if (coeff == 0) return UPoly();
    std::vector<BigInt> c(static_cast<std::size_t>(degree) + 1);
    c.back() = std::move(coeff);
    return UPoly(std::move(c));
  }

  bool is_zero() const noexcept { return c_.empty(); }

  long degree() const {
    if (is_zero()) throw std::domain_error("UPoly: zero polynomial has no degree");
    return static_cast<long>(c_.size()) - 1;
  }

  BigInt coeff(long k) const {
    if (k < 0 || k >= static_cast<long>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(k)];
  }

  const std::vector<BigInt>& coefficients() const noexcept { return c_; }

  // Evaluation at u = a/b through an integer Horner scheme:
  //   p(a/b) = (sum_k c_k a^k b^(d-k)) / b^d
  // which keeps the whole computation in integers.
  BigRat evaluate(const BigRat& u) const {
    if (is_zero()) return BigRat(0);
    const BigInt a = big_numerator(u);
    const BigInt b = big_denominator(u);
    BigInt acc = 0;
    BigInt bpow = 1;  // b^(d-k) built up as k descends
    for (std::size_t k = c_.size(); k-- > 0;) {
      acc = acc * a + c_[k] * bpow;
      bpow *= b;
    }
    bpow /= b;  // b^d
    return BigRat(acc, bpow);
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k] == 0) continue;
      if (!out.empty()) out += c_[k] > 0 ? " + " : " - ";
      else if (c_[k] < 0) out += "-";
      const BigInt mag = c_[k] < 0 ? BigInt(-c_[k]) : c_[k];
      const bool unit = mag == 1;
      if (!unit || k == 0) out += mag.str();
      if (k > 0) {
        if (!unit) out += "*";
        out += "u";
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  std::vector<BigInt> c_;
};

struct Monomial {
  BigInt coeff;
  long degree;
};

// nu(n_q): the binomial expansion of n_q in powers of u = 1-q; the
// coefficient of u^(n-1-k) is C(n, k), so degree n-1 with unit leading
// coefficient.
inline UPoly nu(long n) {
  if (n < 1) throw std::domain_error("nu: n must be >= 1");
  std::vector<BigInt> c(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) {
    c[static_cast<std::size_t>(j)] = binomial(n, n - 1 - j);
  }
  return UPoly(std::move(c));
}

// Evaluate back at u = 1-q; inverse of nu on its image.
inline BigRat nu_inv(const UPoly& p, const BigRat& q) {
  detail::require_unit_rational(q, "nu_inv");
  return p.evaluate(BigRat(1) - q);
}

// pi: projection onto the highest-degree monomial.
inline Monomial pi_project(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("pi_project: zero polynomial");
  return {p.coeff(p.degree()), p.degree()};
}

// sigma: completion of a unit monomial u^d back to nu((d+1)_q).
inline UPoly sigma_complete(const Monomial& m) {
  if (m.coeff != 1) {
    throw std::domain_error("sigma_complete: monomial coefficient must be 1");
  }
  if (m.degree < 0) throw std::domain_error("sigma_complete: negative degree");
  return nu(m.degree + 1);
}

// The deformed product on Z_q through the polynomial ring:
//
//   n_q (*) m_q = nu^-1 sigma { [ (pi nu n_q)^(1/(n-1))
//                                 (pi nu m_q)^(1/(m-1)) ]^((nm-1)/2) }
//
// The fractional exponents are carried as exact rationals; they always
// recombine to the integer degree nm-1, and sigma completes the result
// to nu((nm)_q). Undefined below 2 where the root exponents degenerate
// (1_q is the unit and 0_q the annihilator by definition).
inline UPoly formal_otimes(long n, long m) {
  if (n < 2 || m < 2) {
    throw std::domain_error("formal_otimes: both arguments must be >= 2");
  }
  const Monomial a = pi_project(nu(n));
  const Monomial b = pi_project(nu(m));
  if (a.coeff != 1 || b.coeff != 1) {
    throw std::logic_error("formal_otimes: projections must be unit monomials");
  }
  const BigRat root_a = BigRat(a.degree) / (n - 1);
  const BigRat root_b = BigRat(b.degree) / (m - 1);
  const BigRat degree = (root_a + root_b) * BigRat(BigInt(n) * m - 1, 2);
  if (big_denominator(degree) != 1) {
    throw std::logic_error("formal_otimes: exponents did not recombine to an integer");
  }
  return sigma_complete({BigInt(1), degree.convert_to<long>()});
}

// ---------------------------------------------------------------------
// Erratum report for the second-order-recursion route to the closed form.
//
// Subtracting consecutive instances of the first-order recursion gives
//
//   n_q = (3-q)(n-1)_q - (2-q)(n-2)_q          (minus sign)
//
// with characteristic polynomial x^2 - (3-q)x + (2-q), discriminant
// (3-q)^2 - 4(2-q) = (1-q)^2 and roots {2-q, 1}; fitting the constants
// to 1_q and 2_q reproduces the closed form exactly. The printed route
// instead carries a plus sign and the discriminant 4 + (2-q)^2, whose
// value diverges from the recursion (at q = 1/2: 6.25 vs 4.75 at n = 3).

struct ErratumRow {
  long n;
  double printed;  // printed closed form, floating point
  double actual;   // exact n_q, rounded to double
  bool diverges;
};

struct ErratumReport {
  BigRat q;
  long n_max = 0;

  bool corrected_recursion_matches = false;  // minus-sign recursion == Eq. (11)
  bool discriminant_matches = false;         // (3-q)^2 - 4(2-q) == (1-q)^2
  BigRat root_large, root_small;             // {2-q, 1}
  BigRat c1, c2;                             // fitted constants
  bool closed_form_matches = false;          // c1 r1^n + c2 r2^n == Eq. (11)

  long printed_recursion_first_divergence = -1;  // plus-sign recursion
  std::vector<ErratumRow> printed_rows;          // printed closed form per n
  long printed_first_divergence = -1;

  // Pass = corrected route reproduces the recursion exactly AND the
  // printed closed form is detected as divergent.
  bool passed() const {
    return corrected_recursion_matches && discriminant_matches &&
           closed_form_matches && printed_first_divergence != -1;
  }
};

inline ErratumReport erratum_report(const BigRat& q, long n_max) {
  if (q < 0 || q >= 1) {
    throw std::domain_error("erratum_report: q must lie in [0, 1)");
  }
  if (n_max < 3) throw std::domain_error("erratum_report: n_max must be >= 3");

  ErratumReport rep;
  rep.q = q;
  rep.n_max = n_max;

  // reference values from the first-order recursion
  std::vector<BigRat> ref(static_cast<std::size_t>(n_max) + 1);
  ref[1] = 1;
  const BigRat s = BigRat(2) - q;
  for (long n = 2; n <= n_max; ++n) {
    ref[static_cast<std::size_t>(n)] = s * ref[static_cast<std::size_t>(n - 1)] + 1;
  }

  // (i) corrected minus-sign recursion, and the plus sign as printed
  {
    bool ok = true;
    BigRat w1 = 1, w2 = BigRat(3) - q;
    BigRat p1 = w1, p2 = w2;
    for (long n = 3; n <= n_max; ++n) {
      const BigRat w = (BigRat(3) - q) * w2 - s * w1;
      const BigRat p = (BigRat(3) - q) * p2 + s * p1;
      if (w != ref[static_cast<std::size_t>(n)]) ok = false;
      if (p != ref[static_cast<std::size_t>(n)] &&
          rep.printed_recursion_first_divergence == -1) {
        rep.printed_recursion_first_divergence = n;
      }
      w1 = w2;
      w2 = w;
      p1 = p2;
      p2 = p;
    }
    rep.corrected_recursion_matches = ok;
  }

  // (ii) corrected discriminant and the closed form it implies
  {
    const BigRat disc = (BigRat(3) - q) * (BigRat(3) - q) - 4 * s;
    rep.discriminant_matches = disc == (BigRat(1) - q) * (BigRat(1) - q);

    rep.root_large = s;       // (3-q + (1-q))/2
    rep.root_small = 1;       // (3-q - (1-q))/2
    // Vieta cross-check that these really are the roots.
    if (rep.root_large + rep.root_small != BigRat(3) - q ||
        rep.root_large * rep.root_small != s) {
      throw std::logic_error("erratum_report: root bookkeeping failed");
    }

    // Fit c1 r1 + c2 r2 = 1_q and c1 r1^2 + c2 r2^2 = 2_q exactly.
    const BigRat r1 = rep.root_large, r2 = rep.root_small;
    const BigRat det = r1 * r2 * r2 - r2 * r1 * r1;
    rep.c1 = (r2 * r2 * BigRat(1) - r2 * (BigRat(3) - q)) / det;
    rep.c2 = (r1 * (BigRat(3) - q) - r1 * r1 * BigRat(1)) / det;

    bool ok = true;
    BigRat p1 = r1, p2 = r2;  // r1^n, r2^n
    for (long n = 1; n <= n_max; ++n) {
      if (rep.c1 * p1 + rep.c2 * p2 != ref[static_cast<std::size_t>(n)]) ok = false;
      p1 *= r1;
      p2 *= r2;
    }
    rep.closed_form_matches = ok;
  }

  // (iii) the printed closed form, evaluated in floating point
  {
    const double qd = q.convert_to<double>();
    const double sd = 2.0 - qd;
    const double sqrt_disc = std::sqrt(4.0 + sd * sd);
    const double r1 = (3.0 - qd + sqrt_disc) / 2.0;
    const double r2 = (3.0 - qd - sqrt_disc) / 2.0;
    const double prefactor = 1.0 / sqrt_disc;
    double p1 = r1, p2 = r2;
    for (long n = 1; n <= n_max; ++n) {
      const double printed = prefactor * (p1 + p2);
      const double actual = ref[static_cast<std::size_t>(n)].convert_to<double>();
      const bool div = !almost_equal(printed, actual, 1e-9);
      rep.printed_rows.push_back({n, printed, actual, div});
      if (div && rep.printed_first_divergence == -1) {
        rep.printed_first_divergence = n;
      }
      p1 *= r1;
      p2 *= r2;
    }
  }

  return rep;
}

}  // namespace qdeform

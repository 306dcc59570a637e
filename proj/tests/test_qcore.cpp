#include <catch2/catch_amalgamated.hpp>

#include "qdeform/qcore.hpp"
#include "qdeform/qint.hpp"
#include "qdeform/random.hpp"

using namespace qdeform;

TEST_CASE("parameter and element validation", "[qcore]") {
  CHECK_NOTHROW(QParam(0.0));
  CHECK_NOTHROW(QParam(1.0));
  CHECK_THROWS_AS(QParam(-0.1), std::domain_error);
  CHECK_THROWS_AS(QParam(1.1), std::domain_error);
  CHECK_THROWS_AS(QParam(std::nan("")), std::domain_error);

  const QParam p(0.5);
  CHECK(p.s() == 1.5);
  CHECK(p.u() == 0.5);

  // the image of tau_{1/2} is (-2, inf)
  CHECK_NOTHROW(QReal(p, -1.999));
  CHECK_THROWS_AS(QReal(p, -2.0), std::domain_error);
  CHECK_THROWS_AS(QReal(p, -5.0), std::domain_error);
  CHECK_THROWS_AS(QReal(p, std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_NOTHROW(QReal(QParam(1.0), -100.0));  // no singularity at q = 1
}

TEST_CASE("deformation map", "[qcore]") {
  const QParam p(0.5);

  SECTION("pinned values") {
    for (double qv : {0.0, 0.3, 0.5, 0.9, 1.0}) {
      CHECK(tau(QParam(qv), 1.0).value() == 1.0);
      CHECK(tau(QParam(qv), 0.0).value() == 0.0);
    }
    CHECK(tau(p, 2.0).value() == 2.5);
    CHECK(tau(p, 3.0).value() == 4.75);
    CHECK(tau(QParam(1.0), 1.234).value() == 1.234);
  }

  SECTION("agrees with the exact oracle on integers") {
    for (int k = 0; k <= 10; ++k) {
      const BigRat q(k, 10);
      const QParam pq(static_cast<double>(k) / 10.0);
      for (long n = -20; n <= 40; ++n) {
        const double exact = q_integer_closed(n, q).convert_to<double>();
        REQUIRE(almost_equal(tau(pq, static_cast<double>(n)).value(), exact,
                             1e-13));
      }
    }
  }

  SECTION("strictly increasing") {
    for (double qv : {0.0, 0.5, 1.0}) {
      const QParam pq(qv);
      double prev = tau(pq, -20.0).value();
      for (double x = -19.5; x <= 20.0; x += 0.5) {
        const double cur = tau(pq, x).value();
        REQUIRE(cur > prev);
        prev = cur;
      }
    }
  }

  SECTION("overflow and underflow are reported") {
    CHECK_THROWS_AS(tau(QParam(0.0), 2000.0), std::overflow_error);
    CHECK_THROWS_AS(tau(p, -1000.0), std::underflow_error);
    CHECK_THROWS_AS(tau(p, std::nan("")), std::domain_error);
  }
}

TEST_CASE("inverse map and round trips", "[qcore]") {
  const QParam p(0.5);

  CHECK_THAT(tau_inv(p, 2.5), Catch::Matchers::WithinRel(2.0, 1e-14));
  CHECK(tau_inv(p, 0.0) == 0.0);
  CHECK_THAT(tau_inv(p, -2.0 / 3.0), Catch::Matchers::WithinRel(-1.0, 1e-14));
  CHECK(tau_inv(QParam(1.0), 7.5) == 7.5);

  SECTION("domain") {
    CHECK_THROWS_AS(tau_inv(p, -2.0), std::domain_error);
    CHECK_THROWS_AS(tau_inv(p, -2.5), std::domain_error);
  }

  SECTION("round trip within 1e-10 relative on [-20, 20]") {
    UniformSampler rng(2024);
    for (double qv : {0.0, 0.1, 0.5, 0.9, 0.999, 1.0}) {
      const QParam pq(qv);
      for (int i = 0; i < 2000; ++i) {
        const double x = rng.uniform(-20.0, 20.0);
        const double back = tau_inv(tau(pq, x));
        REQUIRE(std::fabs(back - x) <= 1e-10 * std::max(1.0, std::fabs(x)));
      }
      for (int i = 0; i < 500; ++i) {
        const double y = tau(pq, rng.uniform(-20.0, 20.0)).value();
        const double again = tau(pq, tau_inv(pq, y)).value();
        REQUIRE(almost_equal(again, y, 1e-10));
      }
    }
  }
}

TEST_CASE("generalized addition", "[qcore]") {
  const QParam p(0.5);
  const QReal a = tau(p, 3.0);  // 4.75
  const QReal b = tau(p, 2.0);  // 2.5

  // 4.75 + 2.5 + 0.5*4.75*2.5 is exactly representable
  CHECK(oplus(a, b).value() == 13.1875);
  CHECK(almost_equal(oplus(a, b).value(), tau(p, 5.0).value(), 1e-14));

  CHECK(oplus(a, QReal(p, 0.0)).value() == a.value());

  const QParam one(1.0);
  CHECK(oplus(QReal(one, 3.25), QReal(one, -1.5)).value() == 1.75);

  SECTION("mixed parameters are rejected") {
    const QReal other(QParam(0.3), 1.0);
    CHECK_THROWS_AS(oplus(a, other), std::invalid_argument);
    CHECK_THROWS_AS(ominus(a, other), std::invalid_argument);
    CHECK_THROWS_AS(otimes(a, other), std::invalid_argument);
    CHECK_THROWS_AS(oslash(a, other), std::invalid_argument);
    CHECK_THROWS_AS(q_dist(a, other), std::invalid_argument);
    CHECK_THROWS_AS(q_compare(a, other), std::invalid_argument);
  }
}

TEST_CASE("opposite and subtraction", "[qcore]") {
  const QParam p(0.5);

  CHECK_THAT(neg(QReal(p, 1.0)).value(),
             Catch::Matchers::WithinRel(-2.0 / 3.0, 1e-15));
  CHECK(neg(QReal(p, 0.0)).value() == 0.0);
  CHECK_THAT(neg(QReal(p, 2.5)).value(),
             Catch::Matchers::WithinRel(-1.1111111111111112, 1e-15));
  CHECK_THAT(neg(QReal(p, 2.5)).value(),
             Catch::Matchers::WithinRel(tau(p, -2.0).value(), 1e-14));

  SECTION("involution and annihilation") {
    UniformSampler rng(7);
    for (int i = 0; i < 2000; ++i) {
      const QReal x = tau(p, rng.uniform(-5.0, 5.0));
      REQUIRE(almost_equal(neg(neg(x)).value(), x.value(), 1e-12));
      REQUIRE(std::fabs(oplus(x, neg(x)).value()) <=
              1e-12 * std::max(1.0, std::fabs(x.value())));
    }
  }

  SECTION("ominus") {
    const QReal big(p, 13.1875), small(p, 2.5);
    CHECK_THAT(ominus(big, small).value(),
               Catch::Matchers::WithinRel(4.75, 1e-12));
    CHECK(ominus(big, big).value() == 0.0);
    const QParam one(1.0);
    CHECK(ominus(QReal(one, 3.0), QReal(one, 1.25)).value() == 1.75);

    // antisymmetry: a (-) b = neg(b (-) a)
    UniformSampler rng(8);
    for (int i = 0; i < 1000; ++i) {
      const QReal x = tau(p, rng.uniform(-5.0, 5.0));
      const QReal y = tau(p, rng.uniform(-5.0, 5.0));
      REQUIRE(almost_equal(ominus(x, y).value(), neg(ominus(y, x)).value(),
                           1e-12));
    }
  }
}

TEST_CASE("generalized multiplication and division", "[qcore]") {
  const QParam p(0.5);
  const QReal a(p, 2.5), b(p, 4.75);

  CHECK_THAT(otimes(a, b).value(), Catch::Matchers::WithinRel(20.78125, 1e-12));
  CHECK(otimes(a, QReal(p, 1.0)).value() == a.value());
  CHECK(otimes(a, QReal(p, 0.0)).value() == 0.0);
  CHECK(otimes(QReal(QParam(1.0), 3.0), QReal(QParam(1.0), 4.0)).value() == 12.0);

  CHECK(oslash(a, a).value() == 1.0);
  CHECK_THAT(oslash(QReal(p, 1.0), a).value(),
             Catch::Matchers::WithinRel(0.44948974278317788, 1e-13));
  CHECK(oslash(QReal(QParam(1.0), 10.0), QReal(QParam(1.0), 4.0)).value() == 2.5);
  CHECK_THROWS_AS(oslash(a, QReal(p, 0.0)), std::domain_error);

  SECTION("division inverts multiplication") {
    UniformSampler rng(9);
    for (int i = 0; i < 2000; ++i) {
      const QReal x = tau(p, rng.uniform(-5.0, 5.0));
      // keep the divisor's pre-image away from 0 so the quotient stays
      // inside tau's floating range
      const double b = (rng.unit() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 5.0);
      const QReal y = tau(p, b);
      REQUIRE(almost_equal(otimes(oslash(x, y), y).value(), x.value(), 1e-10));
    }
  }
}

TEST_CASE("homomorphism properties", "[qcore]") {
  UniformSampler rng(11);
  for (double qv : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const QParam p(qv);
    for (int i = 0; i < 2000; ++i) {
      const double x = rng.uniform(-10.0, 10.0);
      const double y = rng.uniform(-10.0, 10.0);
      REQUIRE(almost_equal(tau(p, x + y).value(),
                           oplus(tau(p, x), tau(p, y)).value(), 1e-10));
      const double a = x / 2.0, b = y / 2.0;  // products within range
      REQUIRE(almost_equal(tau(p, a * b).value(),
                           otimes(tau(p, a), tau(p, b)).value(), 1e-10));
    }
  }
}

TEST_CASE("q-absolute value and q-distance", "[qcore]") {
  const QParam p(0.5);
  const QReal a(p, 4.75), b(p, 2.5);

  CHECK(q_dist(a, a).value() == 0.0);
  CHECK_THAT(q_dist(a, b).value(), Catch::Matchers::WithinRel(1.0, 1e-12));
  CHECK_THAT(q_dist(b, a).value(),
             Catch::Matchers::WithinRel(q_dist(a, b).value(), 1e-15));
  CHECK(q_dist(QReal(QParam(1.0), 7.0), QReal(QParam(1.0), 3.0)).value() == 4.0);

  CHECK_THAT(q_abs(QReal(p, -2.0 / 3.0)).value(),
             Catch::Matchers::WithinRel(1.0, 1e-12));
  CHECK(q_abs(QReal(p, 0.0)).value() == 0.0);

  SECTION("nonnegative, zero only at coincidence") {
    UniformSampler rng(13);
    for (int i = 0; i < 2000; ++i) {
      const QReal x = tau(p, rng.uniform(-5.0, 5.0));
      const QReal y = tau(p, rng.uniform(-5.0, 5.0));
      const double d = q_dist(x, y).value();
      REQUIRE(d >= 0.0);
      if (x.value() != y.value()) REQUIRE(d > 0.0);
      REQUIRE(almost_equal(q_abs(x).value(),
                           q_dist(x, QReal(p, 0.0)).value(), 1e-15));
    }
  }
}

TEST_CASE("order", "[qcore]") {
  const QParam p(0.5);
  CHECK(q_compare(QReal(p, 4.75), QReal(p, 2.5)) == std::strong_ordering::greater);
  CHECK(q_compare(QReal(p, 2.5), QReal(p, 2.5)) == std::strong_ordering::equal);
  CHECK(q_compare(QReal(p, -0.6667), QReal(p, 0.0)) == std::strong_ordering::less);

  SECTION("agrees with value order and pre-image order") {
    UniformSampler rng(17);
    for (double qv : {0.0, 0.5, 1.0}) {
      const QParam pq(qv);
      for (int i = 0; i < 2000; ++i) {
        const QReal x = tau(pq, rng.uniform(-8.0, 8.0));
        const QReal y = tau(pq, rng.uniform(-8.0, 8.0));
        const auto ord = q_compare(x, y);
        REQUIRE((ord == std::strong_ordering::less) == (x.value() < y.value()));
        REQUIRE((ord == std::strong_ordering::less) == (tau_inv(x) < tau_inv(y)));
        REQUIRE((ord == std::strong_ordering::greater) ==
                (x.value() > y.value()));
      }
    }
  }
}

TEST_CASE("EXP_q and LOG_q", "[qcore]") {
  const QParam p(0.5);

  CHECK_THAT(exp_q(QReal(p, 0.0)).value(), Catch::Matchers::WithinRel(1.0, 1e-14));
  CHECK_THAT(log_q(QReal(p, 1.0)).value(), Catch::Matchers::WithinAbs(0.0, 1e-14));
  CHECK_THAT(exp_q(QReal(QParam(1.0), 2.0)).value(),
             Catch::Matchers::WithinRel(std::exp(2.0), 1e-15));

  SECTION("mutually inverse") {
    UniformSampler rng(19);
    for (double qv : {0.0, 0.5, 0.9}) {
      const QParam pq(qv);
      for (int i = 0; i < 1000; ++i) {
        const QReal x = tau(pq, rng.uniform(-3.0, 3.0));
        REQUIRE(almost_equal(log_q(exp_q(x)).value(), x.value(), 1e-10));
        const QReal y = tau(pq, rng.uniform(0.05, 20.0));
        REQUIRE(almost_equal(exp_q(log_q(y)).value(), y.value(), 1e-10));
      }
    }
  }

  SECTION("domains") {
    CHECK_THROWS_AS(log_q(QReal(p, 0.0)), std::domain_error);
    CHECK_THROWS_AS(log_q(QReal(p, -0.5)), std::domain_error);
    CHECK_THROWS_AS(exp_q(QReal(QParam(0.0), 1e6)), std::overflow_error);
  }
}

TEST_CASE("continuity and superadditivity in q", "[qcore]") {
  SECTION("stability near q = 1") {
    const QParam p(1.0 - 1e-8);
    for (double x = -10.0; x <= 10.0; x += 0.25) {
      REQUIRE(std::fabs(tau(p, x).value() - x) <= 1e-6);
    }
  }

  SECTION("jumps shrink under grid refinement") {
    for (double x : {-7.0, 0.5, 9.0}) {
      double prev_jump = 0.0;
      for (int level = 0; level < 4; ++level) {
        const int steps = 64 << level;
        double jump = 0.0;
        double last = tau(QParam(0.0), x).value();
        for (int k = 1; k <= steps; ++k) {
          const double v = tau(QParam(static_cast<double>(k) / steps), x).value();
          jump = std::max(jump, std::fabs(v - last));
          last = v;
        }
        if (level > 0) REQUIRE(jump <= 0.75 * prev_jump + 1e-9);
        prev_jump = jump;
      }
    }
  }

  SECTION("superadditive on nonnegative arguments") {
    UniformSampler rng(23);
    for (double qv : {0.0, 0.4, 0.9, 1.0}) {
      const QParam p(qv);
      for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform(0.0, 10.0);
        const double b = rng.uniform(0.0, 10.0);
        const double whole = tau(p, a + b).value();
        REQUIRE(whole >=
                tau(p, a).value() + tau(p, b).value() - 1e-12 * std::max(1.0, whole));
      }
    }
  }
}

TEST_CASE("field axioms on sampled triples", "[qcore]") {
  // pre-images in [-3, 3]: three-fold products stay clear of the region
  // where tau's image collapses onto the singularity in double precision
  UniformSampler rng(29);
  for (double qv : {0.0, 0.5, 1.0}) {
    const QParam p(qv);
    for (int i = 0; i < 1000; ++i) {
      const QReal x = tau(p, rng.uniform(-3.0, 3.0));
      const QReal y = tau(p, rng.uniform(-3.0, 3.0));
      const QReal z = tau(p, rng.uniform(-3.0, 3.0));
      REQUIRE(almost_equal(oplus(oplus(x, y), z).value(),
                           oplus(x, oplus(y, z)).value(), 1e-9));
      REQUIRE(almost_equal(oplus(x, y).value(), oplus(y, x).value(), 1e-12));
      REQUIRE(almost_equal(otimes(otimes(x, y), z).value(),
                           otimes(x, otimes(y, z)).value(), 1e-9));
      REQUIRE(almost_equal(otimes(x, y).value(), otimes(y, x).value(), 1e-12));
      REQUIRE(almost_equal(otimes(x, oplus(y, z)).value(),
                           oplus(otimes(x, y), otimes(x, z)).value(), 1e-9));
    }
  }
}

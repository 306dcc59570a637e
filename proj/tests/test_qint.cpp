#include <catch2/catch_amalgamated.hpp>

#include "qdeform/qint.hpp"

using namespace qdeform;

namespace {

std::vector<BigRat> exact_grid() {
  std::vector<BigRat> g;
  for (int k = 0; k <= 9; ++k) g.emplace_back(k, 10);
  return g;
}

}  // namespace

TEST_CASE("q-integer recursion and closed form", "[qint]") {
  const BigRat half(1, 2);

  SECTION("base cases") {
    CHECK(q_integer_recursive(1, half) == 1);
    CHECK(q_integer_recursive(1, BigRat(3, 10)) == 1);
    CHECK(q_integer_recursive(2, half) == BigRat(5, 2));
    CHECK(q_integer_recursive(3, half) == BigRat(19, 4));
  }

  SECTION("closed form agrees, including negatives") {
    CHECK(q_integer_closed(3, half) == BigRat(19, 4));
    CHECK(q_integer_closed(0, half) == 0);
    CHECK(q_integer_closed(0, BigRat(7, 10)) == 0);
    CHECK(q_integer_closed(-1, half) == BigRat(-2, 3));
  }

  SECTION("q = 1 limit is the identity") {
    CHECK(q_integer_closed(5, BigRat(1)) == 5);
    CHECK(q_integer_closed(-3, BigRat(1)) == -3);
    CHECK(q_integer_recursive(7, BigRat(1)) == 7);
  }

  SECTION("recursion equals closed form across the grid") {
    for (const BigRat& q : exact_grid()) {
      for (long n = 1; n <= 40; ++n) {
        REQUIRE(q_integer_recursive(n, q) == q_integer_closed(n, q));
      }
    }
  }

  SECTION("input validation") {
    CHECK_THROWS_AS(q_integer_recursive(0, half), std::domain_error);
    CHECK_THROWS_AS(q_integer_closed(3, BigRat(11, 10)), std::domain_error);
    CHECK_THROWS_AS(q_integer_closed(3, BigRat(-1, 10)), std::domain_error);
  }
}

TEST_CASE("opposites", "[qint]") {
  const BigRat half(1, 2);

  CHECK(q_opposite(0, half) == 0);
  CHECK(q_opposite(1, half) == BigRat(-2, 3));
  CHECK(q_opposite(2, half) == BigRat(-10, 9));

  SECTION("opposite annihilates under oplus and matches negative index") {
    for (const BigRat& q : exact_grid()) {
      for (long n = 0; n <= 30; ++n) {
        const BigRat opp = q_opposite(n, q);
        REQUIRE(oplus_exact(q_integer_closed(n, q), opp, q) == 0);
        REQUIRE(opp == q_integer_closed(-n, q));
      }
    }
  }

  CHECK_THROWS_AS(q_opposite(-1, half), std::domain_error);
}

TEST_CASE("additive homomorphism is exact", "[qint]") {
  for (const BigRat& q : exact_grid()) {
    for (long n = 0; n <= 30; n += 3) {
      for (long m = 0; m <= 30; m += 2) {
        REQUIRE(q_integer_closed(n + m, q) ==
                oplus_exact(q_integer_closed(n, q), q_integer_closed(m, q), q));
      }
    }
  }
}

TEST_CASE("inverses and rationals", "[qint]") {
  const QParam p(0.5);

  CHECK(q_inverse(1, p) == 1.0);
  CHECK_THAT(q_inverse(2, p),
             Catch::Matchers::WithinRel(0.44948974278317788, 1e-14));
  CHECK_THAT(q_inverse(-1, p),
             Catch::Matchers::WithinRel(-2.0 / 3.0, 1e-14));
  CHECK_THROWS_AS(q_inverse(0, p), std::domain_error);

  SECTION("inverse really inverts under otimes") {
    for (long n : {-5L, -2L, 2L, 3L, 7L, 20L}) {
      const QReal nq = tau(p, static_cast<double>(n));
      const QReal inv(p, q_inverse(n, p));
      CHECK_THAT(otimes(nq, inv).value(), Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
  }

  SECTION("q_rational") {
    CHECK(q_rational(0, 1, p) == 0.0);
    CHECK_THAT(q_rational(1, 2, p),
               Catch::Matchers::WithinRel(0.44948974278317788, 1e-14));
    CHECK_THAT(q_rational(4, 2, p), Catch::Matchers::WithinRel(2.5, 1e-14));
    CHECK_THROWS_AS(q_rational(1, 0, p), std::domain_error);
  }

  SECTION("QRational normalizes") {
    const QRational r(BigInt(2), BigInt(-4));
    CHECK(r.num() == -1);
    CHECK(r.den() == 2);
    CHECK(QRational(BigInt(3), BigInt(6)) == QRational(BigInt(1), BigInt(2)));
    CHECK_THROWS_AS(QRational(BigInt(1), BigInt(0)), std::domain_error);
    CHECK_THAT(QRational(BigInt(1), BigInt(2)).value(p),
               Catch::Matchers::WithinRel(0.44948974278317788, 1e-14));
  }
}

TEST_CASE("polynomial expansion nu and its maps", "[qint]") {
  SECTION("nu(1) and nu(3)") {
    CHECK(nu(1) == UPoly({BigInt(1)}));
    CHECK(nu(3) == UPoly({BigInt(3), BigInt(3), BigInt(1)}));  // u^2 + 3u + 3
    CHECK(nu(3).str() == "u^2 + 3*u + 3");
  }

  SECTION("coefficient pattern: u^(n-1-k) carries C(n, k)") {
    for (long n = 1; n <= 30; ++n) {
      const UPoly pn = nu(n);
      REQUIRE(pn.degree() == n - 1);
      for (long k = 0; k < n; ++k) {
        REQUIRE(pn.coeff(n - 1 - k) == binomial(n, k));
        REQUIRE(pn.coeff(n - 1 - k) > 0);
      }
    }
  }

  SECTION("nu_inv evaluates at u = 1-q") {
    CHECK(nu_inv(nu(3), BigRat(1, 2)) == BigRat(19, 4));
    for (const BigRat& q : exact_grid()) {
      for (long n = 1; n <= 25; ++n) {
        REQUIRE(nu_inv(nu(n), q) == q_integer_closed(n, q));
      }
    }
  }

  SECTION("pi projects onto the leading monomial") {
    const Monomial m3 = pi_project(nu(3));
    CHECK(m3.coeff == 1);
    CHECK(m3.degree == 2);
    CHECK(pi_project(nu(1)).degree == 0);
    CHECK(pi_project(nu(5)).degree == 4);
    CHECK_THROWS_AS(pi_project(UPoly()), std::domain_error);
  }

  SECTION("sigma completes a unit monomial") {
    CHECK(sigma_complete({BigInt(1), 0}) == nu(1));
    CHECK(sigma_complete({BigInt(1), 2}) == nu(3));
    for (long d = 0; d <= 30; ++d) {
      const Monomial back = pi_project(sigma_complete({BigInt(1), d}));
      REQUIRE(back.degree == d);
      REQUIRE(back.coeff == 1);
    }
    CHECK_THROWS_AS(sigma_complete({BigInt(2), 3}), std::domain_error);
  }

  CHECK_THROWS_AS(nu(0), std::domain_error);
}

TEST_CASE("formal deformed product", "[qint]") {
  SECTION("hand-checked products") {
    CHECK(formal_otimes(2, 3) == nu(6));
    CHECK(formal_otimes(2, 2) == nu(4));
    CHECK(nu_inv(formal_otimes(2, 2), BigRat(1, 2)) == BigRat(65, 8));
  }

  SECTION("symmetry") {
    for (long n = 2; n <= 10; ++n) {
      for (long m = 2; m <= 10; ++m) {
        REQUIRE(formal_otimes(n, m) == formal_otimes(m, n));
      }
    }
  }

  SECTION("multiplicative homomorphism against the closed form") {
    for (long n = 2; n <= 12; ++n) {
      for (long m = n; m <= 12; ++m) {
        const UPoly prod = formal_otimes(n, m);
        for (const BigRat& q : exact_grid()) {
          REQUIRE(nu_inv(prod, q) == q_integer_closed(n * m, q));
        }
      }
    }
    // a couple of large pairs from the acceptance range
    CHECK(nu_inv(formal_otimes(29, 30), BigRat(3, 10)) ==
          q_integer_closed(870, BigRat(3, 10)));
  }

  SECTION("distributivity through the homomorphism") {
    const BigRat q(7, 10);
    for (long n = 1; n <= 8; ++n) {
      for (long m = 1; m <= 8; ++m) {
        for (long k = 1; k <= 8; ++k) {
          REQUIRE(q_integer_closed(n * (m + k), q) ==
                  oplus_exact(q_integer_closed(n * m, q),
                              q_integer_closed(n * k, q), q));
        }
      }
    }
  }

  SECTION("characteristic zero") {
    for (const BigRat& q : exact_grid()) {
      BigRat acc = 0;
      for (long n = 1; n <= 100; ++n) {
        acc = oplus_exact(acc, BigRat(1), q);
        REQUIRE(acc != 0);
        REQUIRE(acc == q_integer_closed(n, q));
      }
    }
  }

  CHECK_THROWS_AS(formal_otimes(1, 5), std::domain_error);
  CHECK_THROWS_AS(formal_otimes(5, 1), std::domain_error);
  CHECK_THROWS_AS(formal_otimes(0, 0), std::domain_error);
}

TEST_CASE("erratum report", "[qint]") {
  const ErratumReport rep = erratum_report(BigRat(1, 2), 40);

  SECTION("corrected forms reproduce the recursion") {
    CHECK(rep.corrected_recursion_matches);
    CHECK(rep.discriminant_matches);
    CHECK(rep.closed_form_matches);
    CHECK(rep.root_large == BigRat(3, 2));
    CHECK(rep.root_small == 1);
    CHECK(rep.c1 == 2);
    CHECK(rep.c2 == -2);
  }

  SECTION("printed plus-sign recursion diverges at n = 3") {
    CHECK(rep.printed_recursion_first_divergence == 3);
  }

  SECTION("printed closed form gives 6.25 against the true 4.75") {
    REQUIRE(rep.printed_first_divergence == 3);
    const ErratumRow& row = rep.printed_rows[2];
    CHECK(row.n == 3);
    // q = 1/2 makes every quantity dyadic, so these are exact
    CHECK(row.printed == 6.25);
    CHECK(row.actual == 4.75);
    CHECK(row.diverges);
    CHECK(!rep.printed_rows[0].diverges);  // n = 1 and 2 coincide at q = 1/2
    CHECK(!rep.printed_rows[1].diverges);
    CHECK(rep.passed());
  }

  SECTION("another q still passes detection") {
    const ErratumReport other = erratum_report(BigRat(1, 4), 20);
    CHECK(other.corrected_recursion_matches);
    CHECK(other.discriminant_matches);
    CHECK(other.closed_form_matches);
    CHECK(other.printed_first_divergence == 1);  // prefactor wrong from the start
    CHECK(other.passed());
  }

  SECTION("validation") {
    CHECK_THROWS_AS(erratum_report(BigRat(1), 40), std::domain_error);
    CHECK_THROWS_AS(erratum_report(BigRat(1, 2), 2), std::domain_error);
  }
}

TEST_CASE("rational helpers", "[qint]") {
  CHECK(parse_rational("1/2") == BigRat(1, 2));
  CHECK(parse_rational("-3/9") == BigRat(-1, 3));
  CHECK(parse_rational("0.35") == BigRat(7, 20));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-1.25e-2") == BigRat(-1, 80));
  CHECK(parse_rational("1e3") == 1000);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);

  CHECK(to_string(BigRat(5, 2)) == "5/2");
  CHECK(to_string(BigRat(4)) == "4");

  CHECK(binomial(900, 2) == BigInt(900) * 899 / 2);
  CHECK(rational_pow(BigRat(3, 2), -2) == BigRat(4, 9));
  CHECK(rational_pow(BigRat(0), 5) == 0);
  CHECK_THROWS_AS(rational_pow(BigRat(0), -1), std::domain_error);
}

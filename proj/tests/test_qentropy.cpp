#include <catch2/catch_amalgamated.hpp>

#include "qdeform/qcompat.hpp"
#include "qdeform/qentropy.hpp"
#include "qdeform/random.hpp"

using namespace qdeform;

namespace {

DiscreteDist uniform_dist(std::size_t w) {
  return DiscreteDist(std::vector<double>(w, 1.0 / static_cast<double>(w)));
}

DiscreteDist random_dist(UniformSampler& rng, std::size_t max_size = 8) {
  const std::size_t size = 2 + rng.index(max_size - 1);
  std::vector<double> w(size);
  double sum = 0.0;
  for (double& x : w) {
    x = rng.unit() + 1e-3;
    sum += x;
  }
  for (double& x : w) x /= sum;
  return DiscreteDist(std::move(w));
}

}  // namespace

TEST_CASE("distribution validation", "[qentropy]") {
  CHECK_NOTHROW(DiscreteDist({0.5, 0.5}));
  CHECK_NOTHROW(DiscreteDist({0.5, 0.5, 0.0}));  // zeros allowed
  CHECK_NOTHROW(DiscreteDist({1.0}));
  CHECK_THROWS_AS(DiscreteDist({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDist({0.7, -0.2, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDist({}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDist({0.5, std::nan("")}), std::invalid_argument);
}

TEST_CASE("Tsallis entropy values", "[qentropy]") {
  const QParam half(0.5);

  CHECK_THAT(tsallis_entropy(half, uniform_dist(2)),
             Catch::Matchers::WithinRel(0.82842712474619029, 1e-14));
  CHECK_THAT(tsallis_entropy(half, uniform_dist(2)),
             Catch::Matchers::WithinRel(ln_q(half, 2.0), 1e-13));
  CHECK_THAT(tsallis_entropy(QParam(1.0), uniform_dist(2)),
             Catch::Matchers::WithinRel(std::log(2.0), 1e-15));

  SECTION("point mass has zero entropy at every q, zeros included") {
    const DiscreteDist point({1.0, 0.0, 0.0});
    for (double qv : {0.0, 0.3, 0.5, 1.0}) {
      CHECK(tsallis_entropy(QParam(qv), point) == 0.0);
    }
  }

  SECTION("q = 0 counts the support") {
    CHECK(tsallis_entropy(QParam(0.0), DiscreteDist({0.5, 0.5, 0.0})) == 1.0);
    CHECK(tsallis_entropy(QParam(0.0), uniform_dist(5)) == 4.0);
  }

  SECTION("uniform entropy equals ln_q of the size") {
    for (double qv : {0.0, 0.2, 0.5, 0.8, 1.0}) {
      const QParam p(qv);
      for (std::size_t w = 2; w <= 10; ++w) {
        REQUIRE(almost_equal(tsallis_entropy(p, uniform_dist(w)),
                             ln_q(p, static_cast<double>(w)), 1e-12));
      }
    }
  }

  SECTION("nonnegative and maximized by the uniform distribution") {
    UniformSampler rng(53);
    for (double qv : {0.1, 0.5, 1.0}) {
      const QParam p(qv);
      for (int i = 0; i < 2000; ++i) {
        const DiscreteDist d = random_dist(rng);
        const double s = tsallis_entropy(p, d);
        REQUIRE(s >= 0.0);
        REQUIRE(s <= tsallis_entropy(p, uniform_dist(d.size())) + 1e-12);
      }
    }
  }
}

TEST_CASE("product distribution", "[qentropy]") {
  const DiscreteDist d({0.2, 0.8});

  SECTION("identity factor") {
    const DiscreteDist prod = product_dist(DiscreteDist({1.0}), d);
    REQUIRE(prod.size() == 2);
    CHECK(prod.probabilities()[0] == 0.2);
    CHECK(prod.probabilities()[1] == 0.8);
  }

  SECTION("two fair coins") {
    const DiscreteDist joint = product_dist(uniform_dist(2), uniform_dist(2));
    REQUIRE(joint.size() == 4);
    for (double x : joint.probabilities()) CHECK(x == 0.25);
  }

  SECTION("hand-computed outer product") {
    const DiscreteDist joint = product_dist(d, DiscreteDist({0.3, 0.7}));
    const std::vector<double> expected = {0.06, 0.14, 0.24, 0.56};
    REQUIRE(joint.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK_THAT(joint.probabilities()[i],
                 Catch::Matchers::WithinRel(expected[i], 1e-15));
    }
  }
}

TEST_CASE("composition law", "[qentropy]") {
  const QParam half(0.5);
  const DiscreteDist coin({0.5, 0.5});

  SECTION("two fair coins compose to exactly 2") {
    CHECK_THAT(tsallis_entropy(half, product_dist(coin, coin)),
               Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK(composition_check(half, coin, coin) <= 1e-12);
    // by hand: 0.828... (+) 0.828...
    const double s = tsallis_entropy(half, coin);
    CHECK_THAT(s + s + 0.5 * s * s, Catch::Matchers::WithinAbs(2.0, 1e-12));
  }

  SECTION("a point-mass factor is neutral") {
    UniformSampler rng(59);
    const DiscreteDist point({1.0});
    for (int i = 0; i < 100; ++i) {
      const DiscreteDist a = random_dist(rng);
      CHECK(composition_check(half, a, point) <= 1e-13);
    }
  }

  SECTION("additivity at q = 1") {
    UniformSampler rng(61);
    const QParam one(1.0);
    for (int i = 0; i < 500; ++i) {
      const DiscreteDist a = random_dist(rng);
      const DiscreteDist b = random_dist(rng);
      const double joint = tsallis_entropy(one, product_dist(a, b));
      REQUIRE(almost_equal(joint,
                           tsallis_entropy(one, a) + tsallis_entropy(one, b),
                           1e-12));
    }
  }

  SECTION("identity holds across the q grid") {
    UniformSampler rng(67);
    for (int k = 0; k <= 10; ++k) {
      const QParam p(static_cast<double>(k) / 10.0);
      for (int i = 0; i < 500; ++i) {
        const DiscreteDist a = random_dist(rng);
        const DiscreteDist b = random_dist(rng);
        REQUIRE(composition_check(p, a, b) <= 1e-12);
      }
    }
  }

  SECTION("superadditivity for q <= 1") {
    UniformSampler rng(71);
    for (double qv : {0.0, 0.5, 1.0}) {
      const QParam p(qv);
      for (int i = 0; i < 1000; ++i) {
        const DiscreteDist a = random_dist(rng);
        const DiscreteDist b = random_dist(rng);
        const double joint = tsallis_entropy(p, product_dist(a, b));
        const double parts = tsallis_entropy(p, a) + tsallis_entropy(p, b);
        REQUIRE(joint >= parts - 1e-12 * std::max(1.0, joint));
      }
    }
  }
}

#include <limits>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "isinghom/bond_field.hpp"

using namespace isinghom;

namespace {

BondField random_general_field(int period, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  const std::size_t n = static_cast<std::size_t>(period) * period;
  std::vector<double> h(n), v(n);
  for (auto& w : h) w = u(rng);
  for (auto& w : v) w = u(rng);
  return BondField(period, std::move(h), std::move(v));
}

}  // namespace

TEST_CASE("bond field construction and validation") {
  SUBCASE("homogeneous T=1 field is accepted") {
    BondField f(1, {1.0}, {1.0});
    CHECK(f.period() == 1);
    CHECK(!f.is_mixture());
    CHECK(f.horizontal(5, -3) == 1.0);
  }
  SUBCASE("zero weight is rejected") {
    CHECK_THROWS_WITH_AS(BondField(2, {1, 1, 1, 0}, {1, 1, 1, 1}),
                         doctest::Contains("non-positive weight"), std::invalid_argument);
  }
  SUBCASE("negative and non-finite weights are rejected") {
    CHECK_THROWS_AS(BondField(1, {-1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(BondField(1, {std::numeric_limits<double>::infinity()}, {1}),
                    std::invalid_argument);
  }
  SUBCASE("mixture-tagged field rejects weights outside the phases") {
    CHECK_THROWS_AS(BondField(2, {1, 2, 1.5, 2}, {1, 1, 2, 2}, MixturePhases{1, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(BondField(1, {1}, {1}, MixturePhases{2, 1}), std::invalid_argument);
  }
  SUBCASE("shape mismatch is rejected") {
    CHECK_THROWS_AS(BondField(2, {1, 1, 1}, {1, 1, 1, 1}), std::invalid_argument);
  }
  SUBCASE("periodic indexing wraps both signs") {
    BondField f(2, {1, 2, 3, 4}, {5, 6, 7, 8});
    CHECK(f.horizontal(0, 0) == 1.0);
    CHECK(f.horizontal(2, 2) == 1.0);
    CHECK(f.horizontal(-1, 0) == 2.0);
    CHECK(f.horizontal(-2, -2) == 1.0);
    CHECK(f.vertical(1, -1) == 8.0);
  }
}

TEST_CASE("volume fractions") {
  SUBCASE("all beta") {
    BondField f(2, std::vector<double>(4, 2.0), std::vector<double>(4, 2.0), MixturePhases{1, 2});
    const auto vf = volume_fractions(f);
    CHECK(vf.theta == Rational(1));
    CHECK(vf.theta_h == Rational(1));
    CHECK(vf.theta_v == Rational(1));
  }
  SUBCASE("all horizontal beta, all vertical alpha") {
    BondField f(2, std::vector<double>(4, 2.0), std::vector<double>(4, 1.0), MixturePhases{1, 2});
    const auto vf = volume_fractions(f);
    CHECK(vf.theta_h == Rational(1));
    CHECK(vf.theta_v == Rational(0));
    CHECK(vf.theta == Rational(1, 2));
  }
  SUBCASE("T=2 with 3 horizontal and 1 vertical beta bonds") {
    BondField f(2, {2, 2, 2, 1}, {2, 1, 1, 1}, MixturePhases{1, 2});
    const auto vf = volume_fractions(f);
    CHECK(vf.theta_h == Rational(3, 4));
    CHECK(vf.theta_v == Rational(1, 4));
    CHECK(vf.theta == Rational(1, 2));
  }
  SUBCASE("untagged field is rejected") {
    BondField f(1, {1.0}, {1.0});
    CHECK_THROWS_AS(volume_fractions(f), std::invalid_argument);
  }
  SUBCASE("theta is exactly the mean of theta_h and theta_v") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto f = random_mixture(5, 0.37, seed, 1.0, 2.0);
      const auto vf = volume_fractions(f);
      CHECK(vf.theta == (vf.theta_h + vf.theta_v) / Rational(2));
    }
  }
}

TEST_CASE("random mixture generator") {
  SUBCASE("theta 0 and 1 are the pure fields") {
    const auto f0 = random_mixture(3, 0.0, 1, 1.0, 2.0);
    const auto f1 = random_mixture(3, 1.0, 1, 1.0, 2.0);
    CHECK(volume_fractions(f0).theta == Rational(0));
    CHECK(volume_fractions(f1).theta == Rational(1));
  }
  SUBCASE("fixed seed reproduces the field") {
    const auto a = random_mixture(4, 0.5, 99, 1.0, 2.0);
    const auto b = random_mixture(4, 0.5, 99, 1.0, 2.0);
    CHECK(a == b);
  }
  SUBCASE("beta count is round(2 T^2 theta) across periods and fractions") {
    for (int t = 1; t <= 32; ++t) {
      int i = 0;
      for (double theta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto f = random_mixture(t, theta, static_cast<std::uint64_t>(t * 10 + i++), 1.0, 2.0);
        const auto vf = volume_fractions(f);
        const long long slots = 2ll * t * t;
        CHECK(vf.horizontal_beta_count + vf.vertical_beta_count ==
              std::llround(theta * static_cast<double>(slots)));
        // 2 theta T^2 recovers the integer beta tally exactly
        const Rational total = vf.theta * Rational(slots);
        CHECK(total.den == 1);
        CHECK(total.num == vf.horizontal_beta_count + vf.vertical_beta_count);
      }
    }
  }
  SUBCASE("theta outside [0,1] is rejected") {
    CHECK_THROWS_AS(random_mixture(2, 1.5, 0, 1.0, 2.0), std::invalid_argument);
  }
}

TEST_CASE("transpose and scale") {
  const auto f = random_mixture(4, 0.4, 7, 1.0, 2.0);
  SUBCASE("transpose is an involution") { CHECK(transpose(transpose(f)) == f); }
  SUBCASE("transpose swaps the orientation fractions") {
    const auto vf = volume_fractions(f);
    const auto vt = volume_fractions(transpose(f));
    CHECK(vt.theta_h == vf.theta_v);
    CHECK(vt.theta_v == vf.theta_h);
    CHECK(vt.theta == vf.theta);
  }
  SUBCASE("transpose moves bonds where reflection does") {
    const auto g = transpose(f);
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x) {
        CHECK(g.horizontal(x, y) == f.vertical(y, x));
        CHECK(g.vertical(x, y) == f.horizontal(y, x));
      }
  }
  SUBCASE("scale by 1 is the identity") { CHECK(scale(f, 1.0) == f); }
  SUBCASE("scale multiplies every weight") {
    const auto g = scale(f, 2.5);
    CHECK(g.horizontal(2, 3) == 2.5 * f.horizontal(2, 3));
    CHECK(g.beta() == 2.5 * f.beta());
  }
  SUBCASE("non-positive factors are rejected") {
    CHECK_THROWS_AS(scale(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(scale(f, -1.0), std::invalid_argument);
  }
}

TEST_CASE("serialization round trip") {
  SUBCASE("parse(serialize(f)) == f for random fields") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto f = random_mixture(3, 0.5, seed, 1.0, 2.0);
      CHECK(parse_bond_field(serialize(f)) == f);
    }
    const auto g = random_general_field(3, 11);
    CHECK(parse_bond_field(serialize(g)) == g);
  }
  SUBCASE("writer emits keys in the documented order") {
    const auto f = random_mixture(2, 0.5, 0, 1.0, 2.0);
    const std::string doc = serialize(f);
    CHECK(doc.find("\"T\"") < doc.find("\"alpha\""));
    CHECK(doc.find("\"alpha\"") < doc.find("\"beta\""));
    CHECK(doc.find("\"beta\"") < doc.find("\"horizontal\""));
    CHECK(doc.find("\"horizontal\"") < doc.find("\"vertical\""));
  }
  SUBCASE("reader accepts any key order and ignores extras") {
    const auto f = parse_bond_field(R"({"vertical":[[1]],"extra":42,"horizontal":[[2]],"T":1})");
    CHECK(f.horizontal(0, 0) == 2.0);
    CHECK(!f.is_mixture());
  }
  SUBCASE("malformed documents are rejected") {
    CHECK_THROWS_AS(parse_bond_field("not json"), std::runtime_error);
    CHECK_THROWS_AS(parse_bond_field(R"({"T":2,"horizontal":[[1,1]],"vertical":[[1,1],[1,1]]})"),
                    std::runtime_error);
    CHECK_THROWS_AS(parse_bond_field(R"({"T":1,"alpha":1,"horizontal":[[1]],"vertical":[[1]]})"),
                    std::runtime_error);
    CHECK_THROWS_AS(parse_bond_field(R"({"T":1,"horizontal":[[0]],"vertical":[[1]]})"),
                    std::invalid_argument);
  }
  SUBCASE("field hash is stable and content sensitive") {
    const auto a = random_mixture(3, 0.5, 1, 1.0, 2.0);
    const auto b = random_mixture(3, 0.5, 2, 1.0, 2.0);
    CHECK(field_hash(a) == field_hash(a));
    CHECK(field_hash(a) != field_hash(b));
    CHECK(field_hash(a).size() == 16);
  }
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "isinghom/bounds.hpp"
#include "isinghom/homogenize.hpp"
#include "isinghom/microgeometry.hpp"

using namespace isinghom;

namespace {

SurfaceTensionProfile ell1_profile(double c1, double c2, int fan = 6) {
  return sampled_profile(
      [c1, c2](double a, double b) { return c1 * std::abs(a) + c2 * std::abs(b); }, fan);
}

}  // namespace

TEST_CASE("projection bounds") {
  SUBCASE("all alpha") {
    BondField f(2, std::vector<double>(4, 1.0), std::vector<double>(4, 1.0));
    const auto p = projection_bounds(f);
    CHECK(p.c1 == 1.0);
    CHECK(p.c2 == 1.0);
  }
  SUBCASE("T=4 laminate with two beta rows") {
    const auto f = laminate(4, 2, 0, 1.0, 2.0);
    const auto p = projection_bounds(f);
    CHECK(p.c1 == doctest::Approx((2 * 2.0 + 2 * 1.0) / 4));  // (alpha+beta)/2
    CHECK(p.c2 == 1.0);
  }
  SUBCASE("one alpha bond per row and per column gives (alpha, alpha)") {
    // beta everywhere except the diagonal
    std::vector<double> h(9, 2.0), v(9, 2.0);
    for (int i = 0; i < 3; ++i) {
      h[static_cast<std::size_t>(i) * 3 + i] = 1.0;
      v[static_cast<std::size_t>(i) * 3 + i] = 1.0;
    }
    BondField f(3, h, v, MixturePhases{1, 2});
    const auto p = projection_bounds(f);
    CHECK(p.c1 == 1.0);
    CHECK(p.c2 == 1.0);
  }
}

TEST_CASE("averaging bounds") {
  SUBCASE("all beta") {
    BondField f(2, std::vector<double>(4, 2.0), std::vector<double>(4, 2.0));
    const auto a = averaging_bounds(f);
    CHECK(a.c1 == 2.0);
    CHECK(a.c2 == 2.0);
  }
  SUBCASE("hand-computed T=2 means") {
    BondField f(2, {1, 1, 2, 2}, {1, 2, 2, 2}, MixturePhases{1, 2});
    const auto a = averaging_bounds(f);
    CHECK(a.c1 == doctest::Approx(1.5));
    CHECK(a.c2 == doctest::Approx(1.75));
  }
  SUBCASE("projection never exceeds averaging") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> h(16), v(16);
      for (auto& w : h) w = u(rng);
      for (auto& w : v) w = u(rng);
      BondField f(4, h, v);
      const auto p = projection_bounds(f);
      const auto a = averaging_bounds(f);
      CHECK(p.c1 <= a.c1 + 1e-12);
      CHECK(p.c2 <= a.c2 + 1e-12);
    }
  }
}

TEST_CASE("mixture upper bound") {
  SUBCASE("balanced fractions give theta beta + (1-theta) alpha in both slots") {
    const auto f = laminate(4, 2, 2, 1.0, 2.0);
    const auto m = mixture_upper_bound(f);
    CHECK(m.c1 == doctest::Approx(0.5 * 2 + 0.5 * 1));
    CHECK(m.c2 == doctest::Approx(0.5 * 2 + 0.5 * 1));
  }
  SUBCASE("saturated orientations give (beta, alpha)") {
    const auto f = laminate(2, 2, 0, 1.0, 2.0);
    const auto m = mixture_upper_bound(f);
    CHECK(m.c1 == 2.0);
    CHECK(m.c2 == 1.0);
  }
  SUBCASE("agrees with averaging bounds on random mixtures") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto f = random_mixture(4, 0.4, seed, 1.0, 2.5);
      const auto m = mixture_upper_bound(f);
      const auto a = averaging_bounds(f);
      CHECK(m.c1 == doctest::Approx(a.c1).epsilon(1e-13));
      CHECK(m.c2 == doctest::Approx(a.c2).epsilon(1e-13));
    }
  }
  SUBCASE("untagged field is rejected") {
    BondField f(1, {1.0}, {1.0});
    CHECK_THROWS_AS(mixture_upper_bound(f), std::invalid_argument);
  }
}

TEST_CASE("theorem membership") {
  const double alpha = 1.0, beta = 2.0;
  SUBCASE("alpha l1 is a member for every theta") {
    for (double theta : {0.0, 0.25, 0.5, 1.0}) {
      const auto v = theorem_membership(ell1_profile(alpha, alpha), alpha, beta, theta, 1e-9);
      CHECK(v.member);
      REQUIRE(v.witness.has_value());
      CHECK(!v.worst_violation.has_value());
    }
  }
  SUBCASE("beta l1 is a member exactly at theta = 1") {
    const auto v = theorem_membership(ell1_profile(beta, beta), alpha, beta, 1.0, 1e-9);
    CHECK(v.member);
    CHECK(v.witness->c1 == doctest::Approx(beta));
    CHECK(v.witness->c2 == doctest::Approx(beta));
  }
  SUBCASE("beta l1 at theta = 1/2 is rejected with the diagonal violation") {
    const auto v = theorem_membership(ell1_profile(beta, beta), alpha, beta, 0.5, 1e-9);
    CHECK(!v.member);
    REQUIRE(v.worst_violation.has_value());
    // worst violation at nu = (1,1)/sqrt(2): sqrt(2) * (beta - m) with m = 1.5
    CHECK(std::abs(std::abs(v.worst_violation->nu[0]) - 1 / std::sqrt(2.0)) < 1e-9);
    CHECK(v.worst_violation->amount == doctest::Approx(std::sqrt(2.0) * 0.5).epsilon(1e-9));
  }
  SUBCASE("anisotropic pairs respect the coefficient budget") {
    // c = (1.8, 1.1): needs s = 0.35 and m >= 1.45 -> theta >= 0.45
    const auto p = ell1_profile(1.8, 1.1);
    CHECK(!theorem_membership(p, alpha, beta, 0.40, 1e-9).member);
    CHECK(theorem_membership(p, alpha, beta, 0.45, 1e-9).member);
    CHECK(theorem_membership(p, alpha, beta, 0.80, 1e-9).member);
  }
  SUBCASE("witness pair dominates every sample") {
    const auto p = ell1_profile(1.2, 1.6);
    const auto v = theorem_membership(p, alpha, beta, 0.5, 1e-9);
    REQUIRE(v.member);
    for (const auto& s : p.samples) {
      CHECK(s.value <=
            v.witness->c1 * std::abs(s.nu[0]) + v.witness->c2 * std::abs(s.nu[1]) + 1e-9);
    }
    CHECK(v.witness->c1 <= beta + 1e-12);
    CHECK(v.witness->c2 <= beta + 1e-12);
  }
  SUBCASE("a profile below alpha l1 fails the lower check") {
    const auto v = theorem_membership(ell1_profile(0.9, 1.0), alpha, beta, 0.5, 1e-9);
    CHECK(!v.member);
    REQUIRE(v.worst_violation.has_value());
    CHECK(v.worst_violation->amount == doctest::Approx(0.1).epsilon(1e-6));
  }
  SUBCASE("membership is monotone along theta sweeps") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.8, 2.2);
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = ell1_profile(u(rng), u(rng));
      bool seen = false;
      for (int i = 0; i <= 20; ++i) {
        const bool member = theorem_membership(p, alpha, beta, i / 20.0, 1e-9).member;
        if (seen) CHECK(member);
        seen = seen || member;
      }
    }
  }
  SUBCASE("profiles without axis directions are rejected") {
    auto p = ell1_profile(1.0, 1.0);
    std::erase_if(p.samples, [](const PhiEstimate& s) {
      return std::abs(s.nu[0]) < 1e-9 || std::abs(s.nu[1]) < 1e-9;
    });
    CHECK_THROWS_AS(theorem_membership(p, alpha, beta, 0.5, 1e-9), std::invalid_argument);
  }
  SUBCASE("verdict document carries the outcome") {
    const auto member = theorem_membership(ell1_profile(1, 1), alpha, beta, 0.5, 1e-9);
    const std::string doc = serialize(member);
    CHECK(doc.find("\"member\":true") != std::string::npos);
    CHECK(doc.find("\"witness\":[") != std::string::npos);
    const auto rejected = theorem_membership(ell1_profile(2, 2), alpha, beta, 0.5, 1e-9);
    const std::string doc2 = serialize(rejected);
    CHECK(doc2.find("\"member\":false") != std::string::npos);
    CHECK(doc2.find("\"violation\":{") != std::string::npos);
  }
}

TEST_CASE("bounds sandwich the computed profile") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto f = random_mixture(4, 0.5, seed, 1.0, 2.0);
    const auto proj = projection_bounds(f);
    const auto avg = averaging_bounds(f);
    const auto profile = phi_profile_fan(f, 2, {4, 1e-3});
    for (const auto& s : profile.samples) {
      const double lo = proj.c1 * std::abs(s.nu[0]) + proj.c2 * std::abs(s.nu[1]);
      const double hi = avg.c1 * std::abs(s.nu[0]) + avg.c2 * std::abs(s.nu[1]);
      const double zlen = std::hypot(static_cast<double>(s.z.x), static_cast<double>(s.z.y));
      const double slack = 4 * f.beta() / (s.k_used * f.period() * zlen);
      CHECK(lo <= s.upper * (1 + 1e-12));
      CHECK(s.upper <= hi + slack + 1e-12);
    }
  }
}

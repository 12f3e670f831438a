#include <cmath>
#include <random>

#include "doctest.h"
#include "isinghom/homogenize.hpp"
#include "isinghom/microgeometry.hpp"
#include "isinghom/spin_oracle.hpp"

using namespace isinghom;

namespace {

BondField all_alpha(int period, double alpha) {
  const std::size_t n = static_cast<std::size_t>(period) * period;
  return BondField(period, std::vector<double>(n, alpha), std::vector<double>(n, alpha));
}

HalfPlaneTrace centred_trace(double nx, double ny, int w, int h, double shift = 0.25) {
  const double len = std::hypot(nx, ny);
  HalfPlaneTrace trace;
  trace.nu = {nx / len, ny / len};
  trace.offset = trace.nu[0] * (w - 1) / 2.0 + trace.nu[1] * (h - 1) / 2.0 + shift;
  return trace;
}

}  // namespace

TEST_CASE("spin energy") {
  SUBCASE("constant configurations cost nothing") {
    const auto f = all_alpha(2, 1.0);
    SpinWindow w = boundary_window(3, 3, {{0, 1}, -100.0});
    CHECK(spin_energy(f, w) == 0.0);
  }
  SUBCASE("a single cut bond pays its weight once") {
    // 2 x 1 window, opposite spins across a beta bond
    BondField f(1, {2.0}, {2.0}, MixturePhases{1, 2});
    SpinWindow w = boundary_window(2, 1, centred_trace(1, 0, 2, 1, 0.25));
    CHECK(w.at(0, 0) != w.at(1, 0));
    CHECK(spin_energy(f, w) == 2.0);
  }
  SUBCASE("flat interface across an all-alpha window of width W costs alpha W") {
    const auto f = all_alpha(3, 1.0);
    for (int width : {3, 5, 8}) {
      SpinWindow w = boundary_window(width, 4, centred_trace(0, 1, width, 4));
      CHECK(spin_energy(f, w) == doctest::Approx(1.0 * width).epsilon(1e-14));
    }
  }
  SUBCASE("energy is invariant under a global spin flip") {
    const auto f = random_mixture(3, 0.5, 8, 1.0, 2.0);
    std::mt19937_64 rng(3);
    SpinWindow w = boundary_window(4, 4, centred_trace(0.8, 0.6, 4, 4));
    for (auto& s : w.values) s = rng() & 1 ? +1 : -1;
    SpinWindow flipped = w;
    for (auto& s : flipped.values) s = static_cast<std::int8_t>(-s);
    CHECK(spin_energy(f, w) == spin_energy(f, flipped));
  }
}

TEST_CASE("minimal interface energy") {
  SUBCASE("flat interface is optimal in homogeneous fields") {
    const auto f = all_alpha(2, 1.0);
    const auto trace = centred_trace(0, 1, 6, 6);
    CHECK(min_interface_energy(f, 6, 6, trace) == doctest::Approx(6.0).epsilon(1e-14));
  }
  SUBCASE("exhaustive equals dual path on small windows") {
    std::uint64_t seed = 0;
    for (int t : {2, 3, 4}) {
      for (double theta : {0.25, 0.5, 0.75}) {
        const auto f = random_mixture(t, theta, 100 + seed++, 1.0, 2.0);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> angle(0, 2 * 3.14159265358979);
        for (int trial = 0; trial < 3; ++trial) {
          const double a = angle(rng);
          for (int size : {3, 4}) {
            const auto trace = centred_trace(std::cos(a), std::sin(a), size, size);
            const double ex =
                min_interface_energy(f, size, size, trace, InterfaceMode::exhaustive);
            const double dual =
                min_interface_energy(f, size, size, trace, InterfaceMode::dual_path);
            CHECK(ex == dual);
          }
        }
      }
    }
  }
  SUBCASE("laminate interfaces pay the per-line crossing sum") {
    const auto f = laminate(4, 2, 1, 1.0, 2.0);
    // vertical interface (nu = e1) crosses one horizontal bond per row:
    // height kT rows -> k (N1 beta + (T - N1) alpha)
    for (int k : {1, 2, 3}) {
      const auto trace = centred_trace(1, 0, 6, 4 * k);
      CHECK(min_interface_energy(f, 6, 4 * k, trace, InterfaceMode::dual_path) ==
            doctest::Approx(k * (2 * 2.0 + 2 * 1.0)).epsilon(1e-13));
    }
    // horizontal interface (nu = e2) crosses vertical bonds, choosing the
    // cheapest row: k (N2 beta + (T - N2) alpha)
    for (int k : {1, 2}) {
      const auto trace = centred_trace(0, 1, 4 * k, 6);
      CHECK(min_interface_energy(f, 4 * k, 6, trace, InterfaceMode::dual_path) ==
            doctest::Approx(k * (1 * 2.0 + 3 * 1.0)).epsilon(1e-13));
    }
  }
  SUBCASE("an offset outside the window leaves a one-phase trace") {
    const auto f = all_alpha(2, 1.0);
    const auto trace = HalfPlaneTrace{{0, 1}, 100.0};
    CHECK(min_interface_energy(f, 5, 5, trace) == 0.0);
  }
  SUBCASE("windows too large for forced enumeration are rejected") {
    const auto f = all_alpha(2, 1.0);
    CHECK_THROWS_AS(
        min_interface_energy(f, 8, 8, centred_trace(0, 1, 8, 8), InterfaceMode::exhaustive),
        std::invalid_argument);
  }
  SUBCASE("minimizing configurations have path-structured cuts") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> angle(0, 2 * 3.14159265358979);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto f = random_mixture(3, 0.5, 200 + seed, 1.0, 2.0);
      const double a = angle(rng);
      SpinWindow best;
      min_interface_energy(f, 4, 4, centred_trace(std::cos(a), std::sin(a), 4, 4),
                           InterfaceMode::exhaustive, {0, 0}, &best);
      CHECK(cut_even_incidence(best));
    }
  }
  SUBCASE("interior cut incidence is even for every configuration") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
      SpinWindow w = boundary_window(5, 6, {{0, 1}, 2.5});
      for (auto& s : w.values) s = rng() & 1 ? +1 : -1;
      CHECK(cut_even_incidence(w));
    }
  }
}

TEST_CASE("interface oracle agrees with the crossing engine") {
  SUBCASE("laminate vertical interface energy matches phi at the axis") {
    const auto f = laminate(4, 2, 1, 1.0, 2.0);
    const auto est = phi_direction(f, {0, 1});
    // interface spanning 2 periods
    const auto trace = centred_trace(1, 0, 6, 8);
    const double interface = min_interface_energy(f, 6, 8, trace, InterfaceMode::dual_path);
    CHECK(interface / 8.0 == doctest::Approx(est.value).epsilon(1e-13));
  }
  SUBCASE("report runs both routes on small windows") {
    const auto f = random_mixture(2, 0.5, 7, 1.0, 2.0);
    const auto report = interface_oracle(f, 4, 4, centred_trace(0.6, 0.8, 4, 4));
    REQUIRE(report.exhaustive.has_value());
    CHECK(report.agree);
    const std::string doc = serialize(report);
    CHECK(doc.find("\"exhaustive\":") != std::string::npos);
    CHECK(doc.find("\"agree\":true") != std::string::npos);
  }
  SUBCASE("large windows skip enumeration") {
    const auto f = random_mixture(2, 0.5, 7, 1.0, 2.0);
    const auto report = interface_oracle(f, 8, 6, centred_trace(0, 1, 8, 6));
    CHECK(!report.exhaustive.has_value());
    CHECK(report.agree);
  }
}

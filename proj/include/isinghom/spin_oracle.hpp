#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isinghom/bond_field.hpp"

namespace isinghom {

/// Half-plane trace u(x) = sign(<x, nu> - offset), with sign(0) = +1.
struct HalfPlaneTrace {
  std::array<double, 2> nu{0, 1};
  double offset = 0;
};

int trace_sign(const HalfPlaneTrace& trace, long long x, long long y);

/// Finite rectangular +-1 configuration anchored at `base` in lattice
/// coordinates; values row-major by y.
struct SpinWindow {
  int width = 0;
  int height = 0;
  std::array<long long, 2> base{0, 0};
  std::vector<std::int8_t> values;

  std::int8_t at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
  bool on_frame(int x, int y) const {
    return x == 0 || y == 0 || x == width - 1 || y == height - 1;
  }
};

/// Window with every site set to the half-plane trace sign; only the frame
/// is constrained in minimization, the interior is the starting guess.
SpinWindow boundary_window(int width, int height, const HalfPlaneTrace& trace,
                           std::array<long long, 2> base = {0, 0});

/// Normalized ferromagnetic energy of the window: 1/8 of the sum of
/// c_ij (u_i - u_j)^2 over ordered nearest-neighbour pairs inside the window,
/// which equals the total weight of bonds joining opposite spins.
double spin_energy(const BondField& field, const SpinWindow& window);

enum class InterfaceMode { automatic, exhaustive, dual_path };

/// Minimum of spin_energy over configurations with the given boundary trace.
/// Exhaustive enumeration of the interior for windows up to 4 x 4 (or when
/// forced); planar cut-path duality (shortest dual path between the two
/// frame sign changes) otherwise. `best`, when given, receives a minimizing
/// configuration in exhaustive mode.
double min_interface_energy(const BondField& field, int width, int height,
                            const HalfPlaneTrace& trace,
                            InterfaceMode mode = InterfaceMode::automatic,
                            std::array<long long, 2> base = {0, 0}, SpinWindow* best = nullptr);

/// True when the cut set of the configuration, viewed as dual segments,
/// has even incidence at every dual vertex interior to the window.
bool cut_even_incidence(const SpinWindow& window);

struct OracleReport {
  std::array<double, 2> nu{};
  int width = 0;
  int height = 0;
  std::optional<double> exhaustive;
  double dual_path = 0;
  bool agree = true;
};

/// Runs both routes when the window is small enough to enumerate.
OracleReport interface_oracle(const BondField& field, int width, int height,
                              const HalfPlaneTrace& trace, std::array<long long, 2> base = {0, 0});

std::string serialize(const OracleReport& report);

}  // namespace isinghom

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isinghom/bond_field.hpp"

namespace isinghom {

/// Integer displacement of one period crossing; components coprime.
struct Direction {
  long long x = 0;
  long long y = 0;
};

bool is_primitive(Direction z);

/// Unit interface normal: z/|z| rotated by -pi/2, so that the crossing
/// displacement z is perpendicular to nu.
std::array<double, 2> normal_of(Direction z);

struct window_overflow_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PhiOptions {
  int k_max = 8;
  double rel_tol = 1e-3;
  std::size_t max_window_nodes = 2'000'000;
};

/// Number of dual nodes the search window for (z, k) would allocate.
std::size_t crossing_window_nodes(const BondField& field, Direction z, int k);

/// Minimal total weight of a dual-lattice path from the base dual node
/// (1/2, 1/2) to its translate by k*T*z. The search window is sized so that
/// no path leaving it can undercut the straight staircase; throws
/// window_overflow_error when the window exceeds max_window_nodes.
double crossing_cost(const BondField& field, Direction z, int k,
                     std::size_t max_window_nodes = PhiOptions{}.max_window_nodes);

struct PhiEstimate {
  Direction z;
  std::array<double, 2> nu{};
  double value = 0;  ///< equals upper
  double upper = 0;  ///< min over computed k of d_k / (k T |z|); certified upper bound
  double lower = 0;  ///< projection bound at nu; certified lower bound
  int k_used = 0;
  bool converged = false;
};

PhiEstimate phi_direction(const BondField& field, Direction z, const PhiOptions& opts = {});

/// Samples over a half circle of directions; extend by evenness.
struct SurfaceTensionProfile {
  std::string field_hash;
  std::vector<PhiEstimate> samples;
};

/// Primitive integer directions with max(|x|,|y|) <= max_coord covering the
/// half circle x > 0 plus (0, 1), sorted by angle. Always contains (1, 0),
/// (0, 1), (1, 1) and (1, -1).
std::vector<Direction> direction_fan(int max_coord);

SurfaceTensionProfile phi_profile_fan(const BondField& field, int max_coord,
                                      const PhiOptions& opts = {});

/// Chooses the smallest fan whose size reaches direction_count (>= 4).
SurfaceTensionProfile phi_profile(const BondField& field, int direction_count,
                                  const PhiOptions& opts = {});

/// Profile of an analytic surface tension sampled on the standard fan.
SurfaceTensionProfile sampled_profile(const std::function<double(double, double)>& phi,
                                      int max_coord, const std::string& label = "analytic");

struct ConvexityDefect {
  std::size_t sample_index;  ///< centre sample of the violating triple
  double defect;
};

/// Convexity defects of the even 1-homogeneous extension of the samples.
std::vector<ConvexityDefect> convexity_report(const SurfaceTensionProfile& profile,
                                              double rel_tol = 1e-12);

std::string serialize(const SurfaceTensionProfile& profile);
SurfaceTensionProfile parse_profile(const std::string& text);

}  // namespace isinghom

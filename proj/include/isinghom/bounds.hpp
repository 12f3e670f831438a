#pragma once

#include <array>
#include <optional>
#include <string>

#include "isinghom/bond_field.hpp"

namespace isinghom {

struct SurfaceTensionProfile;

enum class BoundKind { projection, averaging, mixture, witness };

/// Coefficients of the comparison function c1|x1| + c2|x2|.
struct BoundPair {
  double c1 = 0;
  double c2 = 0;
  BoundKind kind = BoundKind::projection;
};

/// Lower bound: mean over rows of the row-minimum horizontal weight and mean
/// over columns of the column-minimum vertical weight.
BoundPair projection_bounds(const BondField& field);

/// Upper bound: mean horizontal and mean vertical weight of one cell.
BoundPair averaging_bounds(const BondField& field);

/// Mixture form of the averaging bound,
/// (theta_h beta + (1-theta_h) alpha, theta_v beta + (1-theta_v) alpha).
/// Requires a mixture-tagged field.
BoundPair mixture_upper_bound(const BondField& field);

struct Violation {
  std::array<double, 2> nu{};
  double amount = 0;
};

struct MembershipVerdict {
  bool member = false;
  std::optional<BoundPair> witness;
  std::optional<Violation> worst_violation;
  double theta = 0;
  double alpha = 0;
  double beta = 0;
  double tol = 0;
};

/// Decides whether the sampled surface tension lies in the optimal-bounds set
/// for volume fraction theta: phi >= alpha l1 everywhere, and some pair
/// c1 = m + s, c2 = m - s with |s| <= beta - m (m = theta beta + (1-theta) alpha)
/// dominates every sample. The profile must contain both axis directions.
MembershipVerdict theorem_membership(const SurfaceTensionProfile& profile, double alpha,
                                     double beta, double theta, double tol);

std::string serialize(const MembershipVerdict& verdict);

}  // namespace isinghom

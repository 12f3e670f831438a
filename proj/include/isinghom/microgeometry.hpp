#pragma once

#include <cstdint>

#include "isinghom/bond_field.hpp"

namespace isinghom {

/// Parameters of the pinned two-phase construction: beta_rows solid rows of
/// beta horizontal bonds, a guaranteed alpha horizontal bond in column 0 of
/// every remaining row, and a seeded fill of the free slots reaching the
/// exact per-orientation beta counts; mirrored for vertical bonds. Both
/// bound pairs coincide on the result, which pins its surface tension to
/// c1|x1| + c2|x2| with c_i = t_i beta + (1 - t_i) alpha, t_i = N_i / T.
struct PinnedSpec {
  int period = 1;                       ///< T
  int beta_rows = 0;                    ///< N1 = t1 * T
  int beta_cols = 0;                    ///< N2 = t2 * T
  long long horizontal_beta_count = 0;  ///< theta1 * T^2
  long long vertical_beta_count = 0;    ///< theta2 * T^2
  std::uint64_t seed = 0;
};

/// Horizontal bonds beta in rows 0..beta_rows-1, vertical bonds beta in
/// columns 0..beta_cols-1, alpha elsewhere.
BondField laminate(int period, int beta_rows, int beta_cols, double alpha, double beta);

/// Requires the strict fractions t_i < theta_i of the construction, i.e.
/// beta_rows * T < horizontal_beta_count and likewise vertically.
BondField pinned_field(const PinnedSpec& spec, double alpha, double beta);

struct RealizeResult {
  BondField field;
  PinnedSpec spec;
  double c1 = 0;    ///< achieved coefficient, a multiple of (beta-alpha)/T above alpha
  double c2 = 0;
  Rational theta;   ///< achieved volume fraction
  Rational theta_h;
  Rational theta_v;
};

/// Builds a periodic mixture whose surface tension is c1|x1| + c2|x2| after
/// rounding t_i to multiples of 1/T, with volume fraction round(2 theta T^2)
/// / (2 T^2). Requires alpha <= c_i <= beta and
/// c1 + c2 <= 2 (theta beta + (1-theta) alpha).
RealizeResult realize_tension(double c1, double c2, double theta, double alpha, double beta,
                              int period, std::uint64_t seed = 0);

}  // namespace isinghom

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isinghom/rational.hpp"

namespace isinghom {

/// Admissible weights of a two-phase mixture, 0 < alpha < beta.
struct MixturePhases {
  double alpha = 0;
  double beta = 0;
};

/// T-periodic positive weights on the nearest-neighbour bonds of the square
/// lattice. horizontal(x, y) is the weight of the bond {(x,y), (x+1,y)},
/// vertical(x, y) of {(x,y), (x,y+1)}; any integer coordinates are accepted
/// and reduced mod T. A field tagged with MixturePhases only carries weights
/// equal to alpha or beta exactly.
class BondField {
 public:
  BondField(int period, std::vector<double> horizontal, std::vector<double> vertical,
            std::optional<MixturePhases> phases = std::nullopt);

  int period() const { return period_; }
  bool is_mixture() const { return phases_.has_value(); }
  double alpha() const;
  double beta() const;

  double horizontal(long long x, long long y) const { return h_[cell(x, y)]; }
  double vertical(long long x, long long y) const { return v_[cell(x, y)]; }

  /// One periodicity cell, row-major by y, index y*T + x.
  const std::vector<double>& horizontal_cell() const { return h_; }
  const std::vector<double>& vertical_cell() const { return v_; }

  double min_weight() const { return min_w_; }
  double max_weight() const { return max_w_; }

  bool operator==(const BondField& other) const;

 private:
  std::size_t cell(long long x, long long y) const {
    long long t = period_;
    long long cx = x % t;
    if (cx < 0) cx += t;
    long long cy = y % t;
    if (cy < 0) cy += t;
    return static_cast<std::size_t>(cy) * static_cast<std::size_t>(t) +
           static_cast<std::size_t>(cx);
  }

  int period_;
  std::vector<double> h_, v_;
  std::optional<MixturePhases> phases_;
  double min_w_ = 0, max_w_ = 0;
};

/// Exact beta-bond tallies of one periodicity cell; theta == (theta_h + theta_v)/2.
struct VolumeFractions {
  Rational theta;
  Rational theta_h;
  Rational theta_v;
  long long horizontal_beta_count = 0;
  long long vertical_beta_count = 0;
};

/// Requires a mixture-tagged field.
VolumeFractions volume_fractions(const BondField& field);

/// Places round(2 T^2 theta) beta-bonds uniformly without replacement;
/// reproducible for a fixed seed.
BondField random_mixture(int period, double theta, std::uint64_t seed, double alpha, double beta);

BondField transpose(const BondField& field);
BondField scale(const BondField& field, double factor);

/// {"T":..,"alpha":..,"beta":..,"horizontal":[[..]],"vertical":[[..]]} with
/// row index y and column index x; floats carry full round-trip precision.
std::string serialize(const BondField& field);

/// Accepts keys in any order; unknown keys are ignored.
BondField parse_bond_field(const std::string& text);

/// Stable hex digest of the canonical serialization.
std::string field_hash(const BondField& field);

}  // namespace isinghom

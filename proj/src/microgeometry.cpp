#include "isinghom/microgeometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace isinghom {

BondField laminate(int period, int beta_rows, int beta_cols, double alpha, double beta) {
  if (beta_rows < 0 || beta_rows > period || beta_cols < 0 || beta_cols > period)
    throw std::invalid_argument("laminate: row/column counts outside [0, T]");
  const std::size_t t = static_cast<std::size_t>(period);
  std::vector<double> h(t * t, alpha), v(t * t, alpha);
  for (std::size_t y = 0; y < static_cast<std::size_t>(beta_rows); ++y)
    for (std::size_t x = 0; x < t; ++x) h[y * t + x] = beta;
  for (std::size_t y = 0; y < t; ++y)
    for (std::size_t x = 0; x < static_cast<std::size_t>(beta_cols); ++x) v[y * t + x] = beta;
  return BondField(period, std::move(h), std::move(v), MixturePhases{alpha, beta});
}

namespace {

// Shared builder; accepts the degenerate counts M_i == N_i * T (no free fill),
// which the public constructor rejects to keep the strict t_i < theta_i
// contract.
BondField build_pinned(const PinnedSpec& spec, double alpha, double beta) {
  const int t = spec.period;
  if (t < 1) throw std::invalid_argument("pinned field: period must be positive");
  if (spec.beta_rows < 0 || spec.beta_rows > t || spec.beta_cols < 0 || spec.beta_cols > t)
    throw std::invalid_argument("pinned field: row/column counts outside [0, T]");
  const long long cell = static_cast<long long>(t) * t;
  const std::size_t n = static_cast<std::size_t>(t);

  std::mt19937_64 rng(spec.seed);

  auto fill_orientation = [&](int full_lines, long long beta_count, bool horizontal) {
    if (beta_count < static_cast<long long>(full_lines) * t || beta_count > cell)
      throw std::invalid_argument("pinned field: beta count incompatible with full lines");
    std::vector<double> w(n * n, alpha);
    // Solid beta lines 0..full_lines-1; a guaranteed alpha bond at index 0 of
    // each remaining line.
    for (std::size_t line = 0; line < static_cast<std::size_t>(full_lines); ++line)
      for (std::size_t i = 0; i < n; ++i)
        w[horizontal ? line * n + i : i * n + line] = beta;
    const long long extra = beta_count - static_cast<long long>(full_lines) * t;
    const long long free_slots =
        static_cast<long long>(t - full_lines) * static_cast<long long>(t - 1);
    if (extra > free_slots)
      throw std::invalid_argument("pinned field: not enough free bonds to reach the beta count");
    std::vector<std::size_t> free_idx;
    free_idx.reserve(static_cast<std::size_t>(free_slots));
    for (std::size_t line = static_cast<std::size_t>(full_lines); line < n; ++line)
      for (std::size_t i = 1; i < n; ++i)
        free_idx.push_back(horizontal ? line * n + i : i * n + line);
    std::shuffle(free_idx.begin(), free_idx.end(), rng);
    for (long long j = 0; j < extra; ++j) w[free_idx[static_cast<std::size_t>(j)]] = beta;
    return w;
  };

  std::vector<double> h = fill_orientation(spec.beta_rows, spec.horizontal_beta_count, true);
  std::vector<double> v = fill_orientation(spec.beta_cols, spec.vertical_beta_count, false);
  return BondField(t, std::move(h), std::move(v), MixturePhases{alpha, beta});
}

}  // namespace

BondField pinned_field(const PinnedSpec& spec, double alpha, double beta) {
  const long long t = spec.period;
  if (spec.horizontal_beta_count <= static_cast<long long>(spec.beta_rows) * t)
    throw std::invalid_argument("pinned field: requires t1 < theta1");
  if (spec.vertical_beta_count <= static_cast<long long>(spec.beta_cols) * t)
    throw std::invalid_argument("pinned field: requires t2 < theta2");
  return build_pinned(spec, alpha, beta);
}

RealizeResult realize_tension(double c1, double c2, double theta, double alpha, double beta,
                              int period, std::uint64_t seed) {
  if (!(alpha > 0) || !(beta > alpha))
    throw std::invalid_argument("realize: need 0 < alpha < beta");
  const double slop = 1e-9 * (beta - alpha);
  if (c1 < alpha - slop || c1 > beta + slop || c2 < alpha - slop || c2 > beta + slop)
    throw std::invalid_argument("realize: coefficients outside [alpha, beta]");
  if (!(theta >= 0 && theta <= 1)) throw std::invalid_argument("realize: theta outside [0, 1]");
  const double m = theta * beta + (1 - theta) * alpha;
  if (c1 + c2 > 2 * m + slop)
    throw std::invalid_argument("realize: c1 + c2 exceeds 2(theta beta + (1-theta) alpha)");
  if (period < 1) throw std::invalid_argument("realize: period must be positive");

  const long long t = period;
  const long long cell = t * t;
  long long total = std::llround(2.0 * theta * static_cast<double>(cell));

  // Round the fractions t_i = (c_i - alpha)/(beta - alpha) to multiples of
  // 1/T, then shrink them as needed so both orientations keep room for their
  // beta counts.
  long long n1 = std::llround((c1 - alpha) / (beta - alpha) * static_cast<double>(t));
  long long n2 = std::llround((c2 - alpha) / (beta - alpha) * static_cast<double>(t));
  n1 = std::clamp(n1, 0ll, t);
  n2 = std::clamp(n2, 0ll, t);
  while (n1 * t + n2 * t > total) {
    if (n1 >= n2 && n1 > 0)
      --n1;
    else if (n2 > 0)
      --n2;
    else
      throw std::invalid_argument("realize: no feasible split of the beta count");
  }

  const auto cap = [&](long long full_lines) {
    // A line that is not solid beta keeps one forced alpha bond.
    return full_lines * t + (t - full_lines) * (t - 1);
  };

  // The forced alpha corridor caps the reachable volume fraction; the
  // achieved theta is reported after this rounding.
  total = std::min(total, cap(n1) + cap(n2));

  long long m1 = n1 * t + (total - n1 * t - n2 * t + 1) / 2;
  m1 = std::max(m1, total - cap(n2));
  m1 = std::min(m1, cap(n1));
  const long long m2 = total - m1;
  if (m1 < n1 * t || m2 < n2 * t || m1 > cap(n1) || m2 > cap(n2))
    throw std::invalid_argument("realize: no feasible split of the beta count");

  PinnedSpec spec;
  spec.period = period;
  spec.beta_rows = static_cast<int>(n1);
  spec.beta_cols = static_cast<int>(n2);
  spec.horizontal_beta_count = m1;
  spec.vertical_beta_count = m2;
  spec.seed = seed;

  RealizeResult out{build_pinned(spec, alpha, beta), spec, 0, 0, Rational(0), Rational(0),
                    Rational(0)};
  const double f1 = static_cast<double>(n1) / static_cast<double>(t);
  const double f2 = static_cast<double>(n2) / static_cast<double>(t);
  out.c1 = f1 * beta + (1 - f1) * alpha;
  out.c2 = f2 * beta + (1 - f2) * alpha;
  out.theta = Rational(total, 2 * cell);
  out.theta_h = Rational(m1, cell);
  out.theta_v = Rational(m2, cell);
  return out;
}

}  // namespace isinghom

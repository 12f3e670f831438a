#include "isinghom/spin_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "isinghom/json_util.hpp"

namespace isinghom {

int trace_sign(const HalfPlaneTrace& trace, long long x, long long y) {
  const double f = trace.nu[0] * static_cast<double>(x) + trace.nu[1] * static_cast<double>(y) -
                   trace.offset;
  return f >= 0 ? +1 : -1;
}

SpinWindow boundary_window(int width, int height, const HalfPlaneTrace& trace,
                           std::array<long long, 2> base) {
  if (width < 1 || height < 1) throw std::invalid_argument("spin window: empty window");
  SpinWindow w;
  w.width = width;
  w.height = height;
  w.base = base;
  w.values.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      w.values[static_cast<std::size_t>(y) * width + x] =
          static_cast<std::int8_t>(trace_sign(trace, base[0] + x, base[1] + y));
  return w;
}

namespace {

struct Bond {
  int ax, ay, bx, by;  // window coordinates of the two sites
  double weight;
};

std::vector<Bond> window_bonds(const BondField& field, int width, int height,
                               std::array<long long, 2> base) {
  std::vector<Bond> bonds;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      if (x + 1 < width)
        bonds.push_back({x, y, x + 1, y, field.horizontal(base[0] + x, base[1] + y)});
      if (y + 1 < height)
        bonds.push_back({x, y, x, y + 1, field.vertical(base[0] + x, base[1] + y)});
    }
  return bonds;
}

}  // namespace

double spin_energy(const BondField& field, const SpinWindow& window) {
  // The 1/8-normalized ordered sum: each cut bond contributes
  // 2 * (u_i - u_j)^2 / 8 = c_ij.
  double energy = 0;
  for (const Bond& b : window_bonds(field, window.width, window.height, window.base))
    if (window.at(b.ax, b.ay) != window.at(b.bx, b.by)) energy += b.weight;
  return energy;
}

namespace {

double min_interface_exhaustive(const BondField& field, int width, int height,
                                const HalfPlaneTrace& trace, std::array<long long, 2> base,
                                SpinWindow* best) {
  SpinWindow window = boundary_window(width, height, trace, base);
  std::vector<std::size_t> interior;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (!window.on_frame(x, y))
        interior.push_back(static_cast<std::size_t>(y) * width + x);
  if (interior.size() > 16)
    throw std::invalid_argument("min interface: window too large for exhaustive enumeration");

  const auto bonds = window_bonds(field, width, height, base);
  double best_energy = std::numeric_limits<double>::infinity();
  SpinWindow best_window = window;
  for (std::uint32_t mask = 0; mask < (1u << interior.size()); ++mask) {
    for (std::size_t i = 0; i < interior.size(); ++i)
      window.values[interior[i]] = (mask >> i) & 1 ? +1 : -1;
    double energy = 0;
    for (const Bond& b : bonds)
      if (window.at(b.ax, b.ay) != window.at(b.bx, b.by)) energy += b.weight;
    if (energy < best_energy) {
      best_energy = energy;
      best_window = window;
    }
  }
  if (best) *best = best_window;
  return best_energy;
}

// Dual vertex (x, y) stands for the dual point (x + 1/2, y + 1/2),
// with x in [-1, W-1] and y in [-1, H-1].
struct DualGrid {
  int width, height;  // window extents in sites
  int nx() const { return width + 1; }
  int ny() const { return height + 1; }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y + 1) * static_cast<std::size_t>(nx()) +
           static_cast<std::size_t>(x + 1);
  }
};

double min_interface_dual(const BondField& field, int width, int height,
                          const HalfPlaneTrace& trace, std::array<long long, 2> base) {
  if (width < 2 || height < 2)
    throw std::invalid_argument("min interface: dual route needs a window of at least 2 x 2");

  // Walk the frame cycle and collect the bonds where the trace changes sign.
  std::vector<std::pair<int, int>> cycle;
  for (int x = 0; x < width; ++x) cycle.emplace_back(x, 0);
  for (int y = 1; y < height; ++y) cycle.emplace_back(width - 1, y);
  for (int x = width - 2; x >= 0; --x) cycle.emplace_back(x, height - 1);
  for (int y = height - 2; y >= 1; --y) cycle.emplace_back(0, y);

  struct Anchor {
    int x, y;  // dual vertex label of the outer endpoint
  };
  std::vector<Anchor> anchors;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto [ax, ay] = cycle[i];
    const auto [bx, by] = cycle[(i + 1) % cycle.size()];
    const int sa = trace_sign(trace, base[0] + ax, base[1] + ay);
    const int sb = trace_sign(trace, base[0] + bx, base[1] + by);
    if (sa == sb) continue;
    if (ay == by) {  // horizontal gap bond
      const int x = std::min(ax, bx);
      anchors.push_back({x, ay == 0 ? -1 : height - 1});
    } else {  // vertical gap bond
      const int y = std::min(ay, by);
      anchors.push_back({ax == 0 ? -1 : width - 1, y});
    }
  }
  if (anchors.empty()) return 0.0;  // one-phase trace: the constant state costs nothing
  if (anchors.size() != 2)
    throw std::invalid_argument("min interface: trace is not a single half plane");

  const DualGrid grid{width, height};
  const std::size_t nodes = static_cast<std::size_t>(grid.nx()) * grid.ny();
  const std::size_t start = grid.index(anchors[0].x, anchors[0].y);
  const std::size_t goal = grid.index(anchors[1].x, anchors[1].y);

  const auto in_window = [&](int sx, int sy) {
    return sx >= 0 && sx < width && sy >= 0 && sy < height;
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(nodes, inf);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  dist[start] = 0.0;
  heap.emplace(0.0, start);
  while (!heap.empty()) {
    const auto [d, i] = heap.top();
    heap.pop();
    if (d > dist[i]) continue;
    if (i == goal) return d;
    const int x = static_cast<int>(i % static_cast<std::size_t>(grid.nx())) - 1;
    const int y = static_cast<int>(i / static_cast<std::size_t>(grid.nx())) - 1;
    const auto relax = [&](int nx2, int ny2, double w) {
      const std::size_t j = grid.index(nx2, ny2);
      const double nd = d + w;
      if (nd < dist[j]) {
        dist[j] = nd;
        heap.emplace(nd, j);
      }
    };
    // A dual step is allowed when the crossed bond lies inside the window.
    if (x + 1 <= width - 1 && in_window(x + 1, y) && in_window(x + 1, y + 1))
      relax(x + 1, y, field.vertical(base[0] + x + 1, base[1] + y));
    if (x - 1 >= -1 && in_window(x, y) && in_window(x, y + 1))
      relax(x - 1, y, field.vertical(base[0] + x, base[1] + y));
    if (y + 1 <= height - 1 && in_window(x, y + 1) && in_window(x + 1, y + 1))
      relax(x, y + 1, field.horizontal(base[0] + x, base[1] + y + 1));
    if (y - 1 >= -1 && in_window(x, y) && in_window(x + 1, y))
      relax(x, y - 1, field.horizontal(base[0] + x, base[1] + y));
  }
  throw std::logic_error("min interface: dual path not found");
}

}  // namespace

double min_interface_energy(const BondField& field, int width, int height,
                            const HalfPlaneTrace& trace, InterfaceMode mode,
                            std::array<long long, 2> base, SpinWindow* best) {
  switch (mode) {
    case InterfaceMode::exhaustive:
      return min_interface_exhaustive(field, width, height, trace, base, best);
    case InterfaceMode::dual_path:
      return min_interface_dual(field, width, height, trace, base);
    case InterfaceMode::automatic:
    default:
      if (width <= 4 && height <= 4)
        return min_interface_exhaustive(field, width, height, trace, base, best);
      return min_interface_dual(field, width, height, trace, base);
  }
}

bool cut_even_incidence(const SpinWindow& window) {
  // Dual endpoints of cut segments, keyed by dual vertex label (x, y) with
  // the DualGrid convention.
  const int nx = window.width + 1;
  std::vector<int> degree(static_cast<std::size_t>(nx) * (window.height + 1), 0);
  const auto touch = [&](int x, int y) {
    degree[static_cast<std::size_t>(y + 1) * nx + static_cast<std::size_t>(x + 1)] += 1;
  };
  for (int y = 0; y < window.height; ++y)
    for (int x = 0; x < window.width; ++x) {
      if (x + 1 < window.width && window.at(x, y) != window.at(x + 1, y)) {
        touch(x, y - 1);  // dual segment of a horizontal bond is vertical
        touch(x, y);
      }
      if (y + 1 < window.height && window.at(x, y) != window.at(x, y + 1)) {
        touch(x - 1, y);  // dual segment of a vertical bond is horizontal
        touch(x, y);
      }
    }
  for (int y = 0; y <= window.height - 2; ++y)
    for (int x = 0; x <= window.width - 2; ++x)
      if (degree[static_cast<std::size_t>(y + 1) * nx + static_cast<std::size_t>(x + 1)] % 2)
        return false;
  return true;
}

OracleReport interface_oracle(const BondField& field, int width, int height,
                              const HalfPlaneTrace& trace, std::array<long long, 2> base) {
  OracleReport report;
  report.nu = trace.nu;
  report.width = width;
  report.height = height;
  report.dual_path = min_interface_energy(field, width, height, trace, InterfaceMode::dual_path, base);
  if (width <= 4 && height <= 4) {
    report.exhaustive =
        min_interface_energy(field, width, height, trace, InterfaceMode::exhaustive, base);
    const double ref = std::max(1.0, std::abs(*report.exhaustive));
    report.agree = std::abs(*report.exhaustive - report.dual_path) <= 1e-12 * ref;
  }
  return report;
}

std::string serialize(const OracleReport& report) {
  std::string out = "{\"nu\":[" + fmt_double(report.nu[0]) + ',' + fmt_double(report.nu[1]) + ']';
  out += ",\"window\":[" + std::to_string(report.width) + ',' + std::to_string(report.height) + ']';
  if (report.exhaustive) out += ",\"exhaustive\":" + fmt_double(*report.exhaustive);
  out += ",\"dual_path\":" + fmt_double(report.dual_path);
  out += ",\"agree\":";
  out += report.agree ? "true" : "false";
  out += '}';
  return out;
}

}  // namespace isinghom

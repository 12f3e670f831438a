#include "isinghom/homogenize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "isinghom/bounds.hpp"
#include "isinghom/json_util.hpp"
#include "json.hpp"

namespace isinghom {

bool is_primitive(Direction z) {
  if (z.x == 0 && z.y == 0) return false;
  return std::gcd(z.x < 0 ? -z.x : z.x, z.y < 0 ? -z.y : z.y) == 1;
}

std::array<double, 2> normal_of(Direction z) {
  const double len = std::hypot(static_cast<double>(z.x), static_cast<double>(z.y));
  return {static_cast<double>(z.y) / len, -static_cast<double>(z.x) / len};
}

namespace {

struct Window {
  long long x0, y0;  // dual node coordinate of the window corner
  long long w, h;    // node counts per axis
};

// Any path reaching margin cells beyond the endpoint box travels an extra
// 2*margin in l1 length, so with
//   margin >= (max_w - min_w) / (2 min_w) * l1(endpoints)
// its cost is at least the all-max straight staircase and it can be clipped
// without changing the minimum.
Window search_window(const BondField& field, Direction z, int k) {
  const long long t = field.period();
  const long long gx = k * t * z.x, gy = k * t * z.y;
  const long long l1 = k * t * (std::llabs(z.x) + std::llabs(z.y));
  const double ratio = (field.max_weight() - field.min_weight()) / (2.0 * field.min_weight());
  const long long margin = static_cast<long long>(std::ceil(ratio * static_cast<double>(l1))) + 1;
  Window win;
  win.x0 = std::min(0ll, gx) - margin;
  win.y0 = std::min(0ll, gy) - margin;
  win.w = std::max(0ll, gx) + margin - win.x0 + 1;
  win.h = std::max(0ll, gy) + margin - win.y0 + 1;
  return win;
}

}  // namespace

std::size_t crossing_window_nodes(const BondField& field, Direction z, int k) {
  const Window win = search_window(field, z, k);
  return static_cast<std::size_t>(win.w) * static_cast<std::size_t>(win.h);
}

double crossing_cost(const BondField& field, Direction z, int k, std::size_t max_window_nodes) {
  if (!is_primitive(z)) throw std::invalid_argument("crossing cost: direction must be primitive");
  if (k < 1) throw std::invalid_argument("crossing cost: k must be positive");

  const Window win = search_window(field, z, k);
  const std::size_t nodes = static_cast<std::size_t>(win.w) * static_cast<std::size_t>(win.h);
  if (nodes > max_window_nodes)
    throw window_overflow_error("crossing cost: search window of " + std::to_string(nodes) +
                                " nodes exceeds the budget of " +
                                std::to_string(max_window_nodes));

  const long long t = field.period();
  const std::size_t start = static_cast<std::size_t>(0 - win.y0) * win.w +
                            static_cast<std::size_t>(0 - win.x0);
  const std::size_t goal = static_cast<std::size_t>(k * t * z.y - win.y0) * win.w +
                           static_cast<std::size_t>(k * t * z.x - win.x0);

  // Dual node index i represents the dual point (x + 1/2, y + 1/2) with
  // x = win.x0 + i % w, y = win.y0 + i / w. A step in +x crosses the vertical
  // bond at (x+1, y), in -x the one at (x, y); a step in +y crosses the
  // horizontal bond at (x, y+1), in -y the one at (x, y).
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
    const long long x = win.x0 + static_cast<long long>(i % static_cast<std::size_t>(win.w));
    const long long y = win.y0 + static_cast<long long>(i / static_cast<std::size_t>(win.w));
    const auto relax = [&](long long nx, long long ny, double w) {
      if (nx < win.x0 || nx >= win.x0 + win.w || ny < win.y0 || ny >= win.y0 + win.h) return;
      const std::size_t j = static_cast<std::size_t>(ny - win.y0) * win.w +
                            static_cast<std::size_t>(nx - win.x0);
      const double nd = d + w;
      if (nd < dist[j]) {
        dist[j] = nd;
        heap.emplace(nd, j);
      }
    };
    relax(x + 1, y, field.vertical(x + 1, y));
    relax(x - 1, y, field.vertical(x, y));
    relax(x, y + 1, field.horizontal(x, y + 1));
    relax(x, y - 1, field.horizontal(x, y));
  }
  throw std::logic_error("crossing cost: goal not reached");  // window always contains a staircase
}

PhiEstimate phi_direction(const BondField& field, Direction z, const PhiOptions& opts) {
  if (opts.k_max < 1) throw std::invalid_argument("phi: k_max must be positive");
  PhiEstimate est;
  est.z = z;
  est.nu = normal_of(z);
  const BoundPair proj = projection_bounds(field);
  est.lower = proj.c1 * std::abs(est.nu[0]) + proj.c2 * std::abs(est.nu[1]);

  const double t = static_cast<double>(field.period());
  const double zlen = std::hypot(static_cast<double>(z.x), static_cast<double>(z.y));

  std::vector<int> schedule;
  for (int k = 1; k <= opts.k_max; k *= 2) schedule.push_back(k);
  if (schedule.back() != opts.k_max) schedule.push_back(opts.k_max);

  double best = std::numeric_limits<double>::infinity();
  double prev = best;
  for (int k : schedule) {
    if (k > 1 && crossing_window_nodes(field, z, k) > opts.max_window_nodes) break;
    const double d = crossing_cost(field, z, k, opts.max_window_nodes);
    const double e = d / (static_cast<double>(k) * t * zlen);
    if (e < best) {
      best = e;
      est.k_used = k;
    }
    // Converged when the certificates pinch or a doubling stops moving the
    // estimate.
    if (best - est.lower <= opts.rel_tol * best) {
      est.converged = true;
      break;
    }
    if (prev < std::numeric_limits<double>::infinity() &&
        std::abs(prev - best) <= opts.rel_tol * best) {
      est.converged = true;
      break;
    }
    prev = best;
  }
  est.upper = best;
  est.value = best;
  return est;
}

std::vector<Direction> direction_fan(int max_coord) {
  if (max_coord < 1) throw std::invalid_argument("direction fan: max_coord must be positive");
  std::vector<Direction> fan;
  fan.push_back({1, 0});
  fan.push_back({0, 1});
  for (long long a = 1; a <= max_coord; ++a)
    for (long long b = 1; b <= max_coord; ++b)
      if (std::gcd(a, b) == 1) {
        fan.push_back({a, b});
        fan.push_back({a, -b});
      }
  std::sort(fan.begin(), fan.end(), [](Direction p, Direction q) {
    const double ap = std::atan2(static_cast<double>(p.y), static_cast<double>(p.x));
    const double aq = std::atan2(static_cast<double>(q.y), static_cast<double>(q.x));
    if (ap != aq) return ap < aq;
    return std::llabs(p.x) + std::llabs(p.y) < std::llabs(q.x) + std::llabs(q.y);
  });
  return fan;
}

SurfaceTensionProfile phi_profile_fan(const BondField& field, int max_coord,
                                      const PhiOptions& opts) {
  SurfaceTensionProfile profile;
  profile.field_hash = field_hash(field);
  for (Direction z : direction_fan(max_coord)) profile.samples.push_back(phi_direction(field, z, opts));
  return profile;
}

SurfaceTensionProfile phi_profile(const BondField& field, int direction_count,
                                  const PhiOptions& opts) {
  if (direction_count < 4)
    throw std::invalid_argument("phi profile: need at least 4 directions");
  int d = 1;
  while (static_cast<int>(direction_fan(d).size()) < direction_count) ++d;
  return phi_profile_fan(field, d, opts);
}

SurfaceTensionProfile sampled_profile(const std::function<double(double, double)>& phi,
                                      int max_coord, const std::string& label) {
  SurfaceTensionProfile profile;
  profile.field_hash = label;
  for (Direction z : direction_fan(max_coord)) {
    PhiEstimate est;
    est.z = z;
    est.nu = normal_of(z);
    est.value = est.upper = est.lower = phi(est.nu[0], est.nu[1]);
    est.k_used = 0;
    est.converged = true;
    profile.samples.push_back(est);
  }
  return profile;
}

std::vector<ConvexityDefect> convexity_report(const SurfaceTensionProfile& profile,
                                              double rel_tol) {
  struct Ray {
    double x, y, phi, angle;
    std::size_t sample;
  };
  std::vector<Ray> circle;
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const auto& s = profile.samples[i];
    circle.push_back({s.nu[0], s.nu[1], s.value, std::atan2(s.nu[1], s.nu[0]), i});
    circle.push_back({-s.nu[0], -s.nu[1], s.value, std::atan2(-s.nu[1], -s.nu[0]), i});
  }
  std::sort(circle.begin(), circle.end(), [](const Ray& a, const Ray& b) {
    return a.angle < b.angle;
  });

  double scale = 0;
  for (const Ray& r : circle) scale = std::max(scale, std::abs(r.phi));

  std::vector<ConvexityDefect> defects;
  std::vector<char> flagged(profile.samples.size(), 0);
  const std::size_t n = circle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Ray& a = circle[i];
    const Ray& b = circle[(i + 1) % n];
    const Ray& c = circle[(i + 2) % n];
    const double det = a.x * c.y - a.y * c.x;
    if (std::abs(det) < 1e-15) continue;  // triple spans >= pi or directions repeat
    const double lam = (b.x * c.y - b.y * c.x) / det;
    const double mu = (a.x * b.y - a.y * b.x) / det;
    if (lam < 0 || mu < 0) continue;
    const double defect = b.phi - lam * a.phi - mu * c.phi;
    if (defect > rel_tol * scale && !flagged[b.sample]) {
      flagged[b.sample] = 1;
      defects.push_back({b.sample, defect});
    }
  }
  std::sort(defects.begin(), defects.end(), [](const ConvexityDefect& a, const ConvexityDefect& b) {
    return a.sample_index < b.sample_index;
  });
  return defects;
}

std::string serialize(const SurfaceTensionProfile& profile) {
  std::string out = "{\"field_hash\":\"" + profile.field_hash + "\",\"samples\":[";
  bool first = true;
  for (const auto& s : profile.samples) {
    if (!first) out += ',';
    first = false;
    out += "{\"z\":[" + std::to_string(s.z.x) + ',' + std::to_string(s.z.y) + ']';
    out += ",\"nu\":[" + fmt_double(s.nu[0]) + ',' + fmt_double(s.nu[1]) + ']';
    out += ",\"value\":" + fmt_double(s.value);
    out += ",\"upper\":" + fmt_double(s.upper);
    out += ",\"lower\":" + fmt_double(s.lower);
    out += ",\"k\":" + std::to_string(s.k_used);
    out += ",\"converged\":";
    out += s.converged ? "true" : "false";
    out += '}';
  }
  out += "]}";
  return out;
}

SurfaceTensionProfile parse_profile(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed profile document: ") + e.what());
  }
  try {
    SurfaceTensionProfile profile;
    profile.field_hash = j.at("field_hash").get<std::string>();
    for (const auto& js : j.at("samples")) {
      PhiEstimate s;
      s.z = {js.at("z").at(0).get<long long>(), js.at("z").at(1).get<long long>()};
      s.nu = {js.at("nu").at(0).get<double>(), js.at("nu").at(1).get<double>()};
      s.value = js.at("value").get<double>();
      s.upper = js.at("upper").get<double>();
      s.lower = js.at("lower").get<double>();
      s.k_used = js.at("k").get<int>();
      s.converged = js.at("converged").get<bool>();
      profile.samples.push_back(s);
    }
    return profile;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed profile document: ") + e.what());
  }
}

}  // namespace isinghom

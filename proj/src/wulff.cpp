#include "isinghom/wulff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "isinghom/json_util.hpp"

namespace isinghom {

namespace {

double cross(const Point2& a, const Point2& b) { return a[0] * b[1] - a[1] * b[0]; }

struct HalfPlane {
  double nx, ny;  // unit outward normal
  double offset;  // x . n <= offset
  double angle;
};

// Clip a convex polygon against x . n <= offset (Sutherland-Hodgman).
std::vector<Point2> clip(const std::vector<Point2>& poly, const HalfPlane& hp, double eps) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double da = a[0] * hp.nx + a[1] * hp.ny - hp.offset;
    const double db = b[0] * hp.nx + b[1] * hp.ny - hp.offset;
    const bool ina = da <= eps, inb = db <= eps;
    if (ina) out.push_back(a);
    if (ina != inb) {
      const double s = da / (da - db);
      out.push_back({a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])});
    }
  }
  return out;
}

std::vector<Point2> prune(const std::vector<Point2>& poly, double scale) {
  const double dup_tol = 1e-12 * scale;
  const double area_tol = 1e-12 * scale * scale;
  std::vector<Point2> out;
  for (const auto& p : poly)
    if (out.empty() || std::hypot(p[0] - out.back()[0], p[1] - out.back()[1]) > dup_tol)
      out.push_back(p);
  while (out.size() > 1 &&
         std::hypot(out.front()[0] - out.back()[0], out.front()[1] - out.back()[1]) <= dup_tol)
    out.pop_back();
  bool changed = true;
  while (changed && out.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Point2& a = out[(i + out.size() - 1) % out.size()];
      const Point2& b = out[i];
      const Point2& c = out[(i + 1) % out.size()];
      const Point2 e1{b[0] - a[0], b[1] - a[1]};
      const Point2 e2{c[0] - b[0], c[1] - b[1]};
      if (std::abs(cross(e1, e2)) <= area_tol) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return out;
}

// Signed depth of p inside the polygon: min over edges of offset - p . n,
// >= 0 iff p is inside.
double depth(const std::vector<Point2>& poly, const Point2& p) {
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double ex = b[0] - a[0], ey = b[1] - a[1];
    const double len = std::hypot(ex, ey);
    // outward normal of a CCW edge
    const double nx = ey / len, ny = -ex / len;
    d = std::min(d, (a[0] * nx + a[1] * ny) - (p[0] * nx + p[1] * ny));
  }
  return d;
}

}  // namespace

WulffPolygon wulff_shape(const SurfaceTensionProfile& profile) {
  if (profile.samples.size() < 2) throw std::invalid_argument("wulff: too few samples");

  std::vector<HalfPlane> planes;
  double max_phi = 0;
  for (const auto& s : profile.samples) {
    if (!(s.value > 0) || !std::isfinite(s.value))
      throw std::invalid_argument("wulff: surface tension samples must be positive");
    max_phi = std::max(max_phi, s.value);
    for (int sign : {+1, -1}) {
      HalfPlane hp;
      hp.nx = sign * s.nu[0];
      hp.ny = sign * s.nu[1];
      hp.offset = s.value;
      hp.angle = std::atan2(hp.ny, hp.nx);
      planes.push_back(hp);
    }
  }
  std::sort(planes.begin(), planes.end(),
            [](const HalfPlane& a, const HalfPlane& b) { return a.angle < b.angle; });
  // Merge near-parallel normals, keeping the tighter offset.
  std::vector<HalfPlane> merged;
  for (const auto& hp : planes) {
    if (!merged.empty() && std::abs(hp.angle - merged.back().angle) < 1e-12) {
      merged.back().offset = std::min(merged.back().offset, hp.offset);
    } else {
      merged.push_back(hp);
    }
  }

  const double box = 4.0 * max_phi;
  std::vector<Point2> poly{{box, box}, {-box, box}, {-box, -box}, {box, -box}};
  const double eps = 1e-12 * max_phi;
  for (const auto& hp : merged) {
    poly = clip(poly, hp, eps);
    if (poly.size() < 3) throw std::invalid_argument("wulff: empty half-plane intersection");
  }
  poly = prune(poly, max_phi);
  if (poly.size() < 3) throw std::invalid_argument("wulff: degenerate half-plane intersection");

  // Boundary energy of the unscaled body: on each edge the support value
  // equals phi at the outward normal, so the edge contributes length * (v.n).
  double energy = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double ex = b[0] - a[0], ey = b[1] - a[1];
    const double len = std::hypot(ex, ey);
    const double nx = ey / len, ny = -ex / len;
    energy += len * (a[0] * nx + a[1] * ny);
  }
  if (!(energy > 0)) throw std::invalid_argument("wulff: non-positive boundary energy");

  WulffPolygon out;
  out.scale = 1.0 / energy;
  out.vertices.reserve(n);
  for (const auto& v : poly) out.vertices.push_back({v[0] * out.scale, v[1] * out.scale});
  out.energy = energy * out.scale;
  return out;
}

namespace {

constexpr int kQuadrantSign[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};

// Branch of the envelope in parameter u = 1/|x1|, clipped to the square of
// side 1/(4 alpha) and, when restricted, to |x_i| >= 1/(8 beta).
struct ArcParam {
  double m;
  double u_lo, u_hi;

  Point2 at(int quadrant, double f) const {
    const double u = u_lo + (u_hi - u_lo) * f;
    return {kQuadrantSign[quadrant][0] / u, kQuadrantSign[quadrant][1] / (16 * m - u)};
  }
};

ArcParam arc_param(double theta, double alpha, double beta, bool restricted) {
  if (!(alpha > 0) || !(beta > alpha)) throw std::invalid_argument("envelope: need 0 < alpha < beta");
  if (!(theta >= 0 && theta <= 1)) throw std::invalid_argument("envelope: theta outside [0, 1]");
  const double m = theta * beta + (1 - theta) * alpha;
  ArcParam arc{m, 8 * alpha, 16 * m - 8 * alpha};
  if (restricted) {
    arc.u_lo = std::max(arc.u_lo, 16 * m - 8 * beta);
    arc.u_hi = std::min(arc.u_hi, 8 * beta);
  }
  return arc;
}

std::vector<EnvelopeArc> make_arcs(double theta, double alpha, double beta, int points_per_arc,
                                   bool restricted) {
  if (points_per_arc < 2) throw std::invalid_argument("envelope: need at least 2 points");
  const ArcParam param = arc_param(theta, alpha, beta, restricted);
  std::vector<EnvelopeArc> arcs;
  for (int q = 0; q < 4; ++q) {
    EnvelopeArc arc;
    arc.quadrant = q;
    arc.restricted = restricted;
    arc.m = param.m;
    for (int i = 0; i < points_per_arc; ++i)
      arc.points.push_back(
          param.at(q, static_cast<double>(i) / static_cast<double>(points_per_arc - 1)));
    arcs.push_back(std::move(arc));
  }
  return arcs;
}

}  // namespace

std::vector<EnvelopeArc> envelope(double theta, double alpha, double beta, int points_per_arc) {
  return make_arcs(theta, alpha, beta, points_per_arc, theta >= 0.5);
}

std::vector<EnvelopeArc> envelope_all(double theta, double alpha, double beta,
                                      int points_per_arc) {
  auto arcs = make_arcs(theta, alpha, beta, points_per_arc, false);
  if (theta >= 0.5) {
    auto restricted = make_arcs(theta, alpha, beta, points_per_arc, true);
    arcs.insert(arcs.end(), restricted.begin(), restricted.end());
  }
  return arcs;
}

Admissibility admissible(const WulffPolygon& polygon, double theta, double alpha, double beta,
                         int samples_per_arc) {
  if (polygon.vertices.size() < 3) throw std::invalid_argument("admissible: degenerate polygon");
  const double half = 1.0 / (8 * alpha);
  Admissibility out;
  out.restricted_test = theta >= 0.5;

  for (const auto& v : polygon.vertices) {
    if (std::abs(v[0]) > half * (1 + 1e-9) || std::abs(v[1]) > half * (1 + 1e-9)) {
      out.detail = "vertex outside the square of side 1/(4 alpha)";
      return out;
    }
  }

  const ArcParam param = arc_param(theta, alpha, beta, out.restricted_test);
  for (int q = 0; q < 4; ++q) {
    // Maximal containment depth over the arc, sampled on the exact curve and
    // refined by ternary search around the best sample.
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < samples_per_arc; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(samples_per_arc - 1);
      const double d = depth(polygon.vertices, param.at(q, f));
      if (d > best) {
        best = d;
        best_i = i;
      }
    }
    double lo = static_cast<double>(std::max(best_i - 1, 0)) /
                static_cast<double>(samples_per_arc - 1);
    double hi = static_cast<double>(std::min(best_i + 1, samples_per_arc - 1)) /
                static_cast<double>(samples_per_arc - 1);
    for (int it = 0; it < 100; ++it) {
      const double f1 = lo + (hi - lo) / 3, f2 = hi - (hi - lo) / 3;
      if (depth(polygon.vertices, param.at(q, f1)) < depth(polygon.vertices, param.at(q, f2)))
        lo = f1;
      else
        hi = f2;
    }
    best = std::max(best, depth(polygon.vertices, param.at(q, 0.5 * (lo + hi))));
    if (best < -1e-12 * half) {
      out.detail = "misses an envelope arc in quadrant " + std::to_string(q);
      return out;
    }
  }
  out.admissible = true;
  out.detail = "contained in the square and meets all four arcs";
  return out;
}

RectangleWitness contains_admissible_rectangle(const WulffPolygon& polygon, double theta,
                                               double alpha, double beta, int grid) {
  if (polygon.vertices.size() < 3)
    throw std::invalid_argument("contains rectangle: degenerate polygon");
  const double m = theta * beta + (1 - theta) * alpha;
  const double s_cap = beta - m;
  const double tol = -1e-12 / alpha;

  // Depth of the rectangle for parameter s: both independent corners must be
  // inside (the other two follow by central symmetry).
  const auto rect_depth = [&](double s) {
    const double c1 = m + s, c2 = m - s;
    if (c1 <= 0 || c2 <= 0) return -std::numeric_limits<double>::infinity();
    const double a = 1.0 / (8 * c2), b = 1.0 / (8 * c1);
    return std::min(depth(polygon.vertices, {a, b}), depth(polygon.vertices, {-a, b}));
  };

  double best = -std::numeric_limits<double>::infinity(), best_s = 0;
  for (int i = 0; i <= grid; ++i) {
    const double s = -s_cap + 2 * s_cap * static_cast<double>(i) / static_cast<double>(grid);
    const double d = rect_depth(s);
    if (d > best) {
      best = d;
      best_s = s;
    }
  }
  double lo = std::max(-s_cap, best_s - 2 * s_cap / grid);
  double hi = std::min(s_cap, best_s + 2 * s_cap / grid);
  for (int it = 0; it < 80; ++it) {
    const double s1 = lo + (hi - lo) / 3, s2 = hi - (hi - lo) / 3;
    if (rect_depth(s1) < rect_depth(s2))
      lo = s1;
    else
      hi = s2;
  }
  const double s_ref = 0.5 * (lo + hi);
  if (rect_depth(s_ref) > best) {
    best = rect_depth(s_ref);
    best_s = s_ref;
  }

  RectangleWitness out;
  if (best >= tol) {
    out.found = true;
    out.s = best_s;
    out.c1 = m + best_s;
    out.c2 = m - best_s;
  }
  return out;
}

std::vector<Point2> convex_hull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = points.size();
  if (n < 3) return points;
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross({hull[k - 1][0] - hull[k - 2][0], hull[k - 1][1] - hull[k - 2][1]},
                           {points[i][0] - hull[k - 2][0], points[i][1] - hull[k - 2][1]}) <= 0)
      --k;
    hull[k++] = points[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross({hull[k - 1][0] - hull[k - 2][0], hull[k - 1][1] - hull[k - 2][1]},
                               {points[i][0] - hull[k - 2][0], points[i][1] - hull[k - 2][1]}) <= 0)
      --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::string serialize(const WulffPolygon& polygon) {
  std::string out = "{\"vertices\":[";
  for (std::size_t i = 0; i < polygon.vertices.size(); ++i) {
    if (i) out += ',';
    out += '[' + fmt_double(polygon.vertices[i][0]) + ',' + fmt_double(polygon.vertices[i][1]) + ']';
  }
  out += "],\"scale\":" + fmt_double(polygon.scale);
  out += ",\"energy\":" + fmt_double(polygon.energy);
  out += '}';
  return out;
}

namespace {

std::string svg_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

std::string to_svg(const WulffPolygon& polygon, double theta, double alpha, double beta,
                   int points_per_arc) {
  const double half = 1.0 / (8 * alpha);
  const double vb = 1.1 * half;
  const double stroke = 0.006 * half;
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + svg_num(-vb) + ' ' +
         svg_num(-vb) + ' ' + svg_num(2 * vb) + ' ' + svg_num(2 * vb) + "\">\n";
  svg += "<g transform=\"scale(1,-1)\">\n";
  svg += "<rect x=\"" + svg_num(-half) + "\" y=\"" + svg_num(-half) + "\" width=\"" +
         svg_num(2 * half) + "\" height=\"" + svg_num(2 * half) +
         "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"" + svg_num(stroke) + "\"/>\n";
  svg += "<line x1=\"" + svg_num(-vb) + "\" y1=\"0\" x2=\"" + svg_num(vb) +
         "\" y2=\"0\" stroke=\"#cccccc\" stroke-width=\"" + svg_num(0.5 * stroke) + "\"/>\n";
  svg += "<line x1=\"0\" y1=\"" + svg_num(-vb) + "\" x2=\"0\" y2=\"" + svg_num(vb) +
         "\" stroke=\"#cccccc\" stroke-width=\"" + svg_num(0.5 * stroke) + "\"/>\n";
  for (const auto& arc : envelope_all(theta, alpha, beta, points_per_arc)) {
    svg += "<polyline points=\"";
    for (std::size_t i = 0; i < arc.points.size(); ++i) {
      if (i) svg += ' ';
      svg += svg_num(arc.points[i][0]) + "," + svg_num(arc.points[i][1]);
    }
    svg += "\" fill=\"none\" stroke=\"";
    svg += arc.restricted ? "#b03030" : "#7090d0";
    svg += "\" stroke-width=\"" + svg_num((arc.restricted ? 1.2 : 0.8) * stroke) + "\"/>\n";
  }
  svg += "<polygon points=\"";
  for (std::size_t i = 0; i < polygon.vertices.size(); ++i) {
    if (i) svg += ' ';
    svg += svg_num(polygon.vertices[i][0]) + "," + svg_num(polygon.vertices[i][1]);
  }
  svg += "\" fill=\"#cde8cd\" fill-opacity=\"0.6\" stroke=\"#206020\" stroke-width=\"" +
         svg_num(stroke) + "\"/>\n";
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace isinghom

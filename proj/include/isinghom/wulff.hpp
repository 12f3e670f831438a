#pragma once

#include <array>
#include <string>
#include <vector>

#include "isinghom/homogenize.hpp"

namespace isinghom {

using Point2 = std::array<double, 2>;

/// Centrally symmetric convex polygon, counterclockwise, scaled so that its
/// boundary energy against the generating surface tension equals 1.
struct WulffPolygon {
  std::vector<Point2> vertices;
  double scale = 1;   ///< factor applied to the unscaled half-plane intersection
  double energy = 0;  ///< boundary energy after scaling
};

/// Intersection of the half planes {x . nu <= phi(nu)} over all samples and
/// their negations, normalized to unit boundary energy. The profile must be
/// convex (see convexity_report) and contain the axis directions.
WulffPolygon wulff_shape(const SurfaceTensionProfile& profile);

/// One quadrant branch of 1/|x1| + 1/|x2| = 16 m clipped to the square of
/// side 1/(4 alpha); restricted arcs additionally satisfy |x_i| >= 1/(8 beta).
struct EnvelopeArc {
  int quadrant = 0;  ///< 0..3 with sign patterns (+,+), (-,+), (-,-), (+,-)
  bool restricted = false;
  double m = 0;
  std::vector<Point2> points;
};

/// Four quadrant arcs; when theta >= 1/2 the restricted arcs are returned
/// (they coincide with the unrestricted ones for theta <= 1/2).
std::vector<EnvelopeArc> envelope(double theta, double alpha, double beta,
                                  int points_per_arc = 128);

/// All four arcs plus, for theta >= 1/2, the restricted variants.
std::vector<EnvelopeArc> envelope_all(double theta, double alpha, double beta,
                                      int points_per_arc = 128);

struct Admissibility {
  bool admissible = false;
  bool restricted_test = false;  ///< whether the theta >= 1/2 arc restriction applied
  std::string detail;
};

/// Containment in the square of side 1/(4 alpha) plus nonempty intersection
/// with each of the four (restricted, when theta >= 1/2) envelope arcs.
Admissibility admissible(const WulffPolygon& polygon, double theta, double alpha, double beta,
                         int samples_per_arc = 512);

struct RectangleWitness {
  bool found = false;
  double s = 0;  ///< witness parameter: c1 = m + s, c2 = m - s
  double c1 = 0;
  double c2 = 0;
};

/// Searches for a rectangle with vertex (1/(8 c2), 1/(8 c1)), c1 + c2 = 2m,
/// |s| <= beta - m, contained in the polygon.
RectangleWitness contains_admissible_rectangle(const WulffPolygon& polygon, double theta,
                                               double alpha, double beta, int grid = 1024);

/// Counterclockwise hull with collinear points pruned.
std::vector<Point2> convex_hull(std::vector<Point2> points);

std::string serialize(const WulffPolygon& polygon);

/// Deterministic figure: bounding square, axes, envelope arcs and the
/// polygon, in a viewBox 10% wider than the square.
std::string to_svg(const WulffPolygon& polygon, double theta, double alpha, double beta,
                   int points_per_arc = 256);

}  // namespace isinghom

#pragma once

#include "blforms/rational.hpp"
#include "blforms/vector_family.hpp"

#include <optional>
#include <vector>

namespace blf {

struct RatPoint {
  Rational x;
  Rational y;
};

/// One signed strip {x in R^2 : lo <= v . x <= hi}. A radial constraint
/// |v . x| in [a, b] expands into the two strips (v, a, b) and (v, -b, -a).
struct StripConstraint {
  Vec2 v;
  Rational lo;
  Rational hi;  // may exceed any coordinate bound but must be finite
};

/// Convex polygon as a counterclockwise vertex list; empty means empty set.
using Polygon = std::vector<RatPoint>;

/// Exact area via the shoelace formula.
Rational polygon_area(const Polygon& poly);

/// Clips poly against the half-plane a*x + b*y <= c (Sutherland-Hodgman with
/// exact rational intersections).
Polygon clip_half_plane(const Polygon& poly, const Rational& a, const Rational& b,
                        const Rational& c);

/// Exact area of the intersection of the strips. Seeds from two strips with
/// non-parallel directions (their four corner solves give a bounded
/// parallelogram) and clips the remaining half-planes; throws InputError when
/// no two independent strips exist.
Rational strip_intersection_area(const std::vector<StripConstraint>& strips);

}  // namespace blf

#include "blforms/polygon.hpp"

#include <utility>

namespace blf {

Rational polygon_area(const Polygon& poly) {
  if (poly.size() < 3) return Rational(0);
  Rational twice = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const RatPoint& p = poly[i];
    const RatPoint& q = poly[(i + 1) % poly.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  return rational_abs(twice) / 2;
}

Polygon clip_half_plane(const Polygon& poly, const Rational& a, const Rational& b,
                        const Rational& c) {
  Polygon out;
  if (poly.empty()) return out;
  auto side = [&](const RatPoint& p) { return a * p.x + b * p.y - c; };  // <= 0 keeps
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const RatPoint& cur = poly[i];
    const RatPoint& nxt = poly[(i + 1) % poly.size()];
    Rational sc = side(cur), sn = side(nxt);
    bool cur_in = sc <= 0, nxt_in = sn <= 0;
    if (cur_in) out.push_back(cur);
    if (cur_in != nxt_in) {
      // Intersection of segment with the line a x + b y = c.
      Rational t = sc / (sc - sn);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

Rational strip_intersection_area(const std::vector<StripConstraint>& strips) {
  if (strips.size() < 2) throw InputError("strip intersection needs at least two strips");
  // Find two strips with independent directions for the seed parallelogram.
  std::size_t i0 = 0, i1 = strips.size();
  for (std::size_t j = 1; j < strips.size(); ++j) {
    if (det2(strips[i0].v, strips[j].v) != 0) {
      i1 = j;
      break;
    }
  }
  if (i1 == strips.size())
    throw InputError("all strip directions are parallel; intersection is unbounded");

  const StripConstraint& s0 = strips[i0];
  const StripConstraint& s1 = strips[i1];
  Rational d = det2(s0.v, s1.v);
  auto corner = [&](const Rational& t0, const Rational& t1) -> RatPoint {
    // Solve v0 . x = t0, v1 . x = t1.
    return {(t0 * s1.v.y - t1 * s0.v.y) / d, (s0.v.x * t1 - s1.v.x * t0) / d};
  };
  Polygon poly{corner(s0.lo, s1.lo), corner(s0.hi, s1.lo), corner(s0.hi, s1.hi),
               corner(s0.lo, s1.hi)};
  // Ensure counterclockwise orientation for the clipper.
  Rational twice = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const RatPoint& p = poly[i];
    const RatPoint& q = poly[(i + 1) % poly.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  if (twice < 0) std::swap(poly[1], poly[3]);

  for (std::size_t j = 0; j < strips.size(); ++j) {
    if (j == i0 || j == i1) continue;
    const StripConstraint& s = strips[j];
    poly = clip_half_plane(poly, s.v.x, s.v.y, s.hi);             // v.x <= hi
    poly = clip_half_plane(poly, -s.v.x, -s.v.y, -s.lo);          // v.x >= lo
    if (poly.empty()) return Rational(0);
  }
  return polygon_area(poly);
}

}  // namespace blf

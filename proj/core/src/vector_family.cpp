#include "blforms/vector_family.hpp"

#include <string>
#include <utility>

namespace blf {

Rational det2(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }

VectorFamily::VectorFamily(std::vector<Vec2> vectors, int k)
    : vectors_(std::move(vectors)), k_(k) {
  if (vectors_.size() < 2) throw InputError("vector family needs N >= 2 vectors");
  if (k_ < 1) throw InputError("tensor power k must be a positive integer");
  for (std::size_t j = 0; j < vectors_.size(); ++j) {
    if (vectors_[j].x == 0 && vectors_[j].y == 0)
      throw InputError("vector v_" + std::to_string(j) + " is zero");
  }
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors_.size(); ++j) {
      if (det2(vectors_[i], vectors_[j]) == 0)
        throw InputError("vectors v_" + std::to_string(i) + " and v_" + std::to_string(j) +
                         " are parallel; every pair must be a basis of R^2");
    }
  }
}

std::pair<Rational, Rational> VectorFamily::expand_in_basis(std::size_t target, std::size_t j1,
                                                            std::size_t j2) const {
  const Vec2& t = vector(target);
  const Vec2& a = vector(j1);
  const Vec2& b = vector(j2);
  Rational d = det2(a, b);
  // Cramer's rule; d != 0 is a class invariant.
  Rational c1 = (t.x * b.y - t.y * b.x) / d;
  Rational c2 = (a.x * t.y - a.y * t.x) / d;
  return {c1, c2};
}

}  // namespace blf

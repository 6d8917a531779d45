#pragma once

#include "blforms/rational.hpp"

#include <cstddef>
#include <vector>

namespace blf {

struct Vec2 {
  Rational x;
  Rational y;
};

/// det [u v] as columns; nonzero iff {u, v} is a basis of R^2.
Rational det2(const Vec2& u, const Vec2& v);

/// The N vectors v_1..v_N in R^2 defining the form, plus the tensor power k
/// (the form integrates over R^{2k} and the v_j act coordinate-pair-wise).
/// Every pair of distinct vectors must be a basis of R^2.
class VectorFamily {
 public:
  VectorFamily(std::vector<Vec2> vectors, int k);

  std::size_t size() const { return vectors_.size(); }
  int k() const { return k_; }
  const Vec2& vector(std::size_t j) const { return vectors_.at(j); }
  const std::vector<Vec2>& vectors() const { return vectors_; }

  /// Solves v_target = c1 * v_{j1} + c2 * v_{j2} exactly.
  std::pair<Rational, Rational> expand_in_basis(std::size_t target, std::size_t j1,
                                                std::size_t j2) const;

 private:
  std::vector<Vec2> vectors_;
  int k_;
};

}  // namespace blf

#pragma once

#include "blforms/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace blf {

/// One exponent slot: 1/p_j in [0,1] and the weight power lambda_j.
struct ExponentEntry {
  Rational inv_p;
  Rational lam;
};

/// The exponent vector (1/p_1, lambda_1, ..., 1/p_N, lambda_N), optionally
/// with Lorentz secondary exponents 1/r_j in [0,1]. All entries exact.
class IndexPoint {
 public:
  explicit IndexPoint(std::vector<ExponentEntry> entries,
                      std::optional<std::vector<Rational>> lorentz = std::nullopt);

  std::size_t size() const { return entries_.size(); }
  const ExponentEntry& entry(std::size_t j) const { return entries_.at(j); }
  const std::vector<ExponentEntry>& entries() const { return entries_; }
  bool has_lorentz() const { return lorentz_.has_value(); }
  const std::vector<Rational>& lorentz() const;

  /// 1/p_j + lambda_j / k, the per-slot scaling contribution.
  Rational slot_sum(std::size_t j, int k) const;

 private:
  std::vector<ExponentEntry> entries_;
  std::optional<std::vector<Rational>> lorentz_;
};

/// Index data for the N-linear fractional integral T_{N,lambda}: the N
/// distinct nonzero shifts theta_j, the kernel power lambda in (0, k), and
/// N+1 exponent slots j = 0..N.
class MlfiIndexPoint {
 public:
  MlfiIndexPoint(std::vector<Rational> theta, Rational lam,
                 std::vector<ExponentEntry> entries, int k);

  std::size_t arity() const { return theta_.size(); }  // N
  const std::vector<Rational>& theta() const { return theta_; }
  const Rational& lam() const { return lam_; }
  const std::vector<ExponentEntry>& entries() const { return entries_; }
  const ExponentEntry& entry(std::size_t j) const { return entries_.at(j); }
  int k() const { return k_; }

 private:
  std::vector<Rational> theta_;
  Rational lam_;
  std::vector<ExponentEntry> entries_;  // N+1 slots
  int k_;
};

}  // namespace blf

#include "blforms/index_point.hpp"

#include <string>
#include <utility>

namespace blf {

IndexPoint::IndexPoint(std::vector<ExponentEntry> entries,
                       std::optional<std::vector<Rational>> lorentz)
    : entries_(std::move(entries)), lorentz_(std::move(lorentz)) {
  if (entries_.empty()) throw InputError("index point needs at least one entry");
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    const auto& e = entries_[j];
    if (e.inv_p < 0 || e.inv_p > 1)
      throw InputError("1/p_" + std::to_string(j) + " = " + rational_to_string(e.inv_p) +
                       " is outside [0,1]");
  }
  if (lorentz_) {
    if (lorentz_->size() != entries_.size())
      throw InputError("lorentz exponent list length differs from entry count");
    for (std::size_t j = 0; j < lorentz_->size(); ++j) {
      if ((*lorentz_)[j] < 0 || (*lorentz_)[j] > 1)
        throw InputError("1/r_" + std::to_string(j) + " is outside [0,1]");
    }
  }
}

const std::vector<Rational>& IndexPoint::lorentz() const {
  if (!lorentz_) throw InputError("index point has no Lorentz exponents");
  return *lorentz_;
}

Rational IndexPoint::slot_sum(std::size_t j, int k) const {
  const auto& e = entry(j);
  return e.inv_p + e.lam / k;
}

MlfiIndexPoint::MlfiIndexPoint(std::vector<Rational> theta, Rational lam,
                               std::vector<ExponentEntry> entries, int k)
    : theta_(std::move(theta)), lam_(std::move(lam)), entries_(std::move(entries)), k_(k) {
  if (theta_.empty()) throw InputError("mlfi point needs N >= 1 shifts");
  if (k_ < 1) throw InputError("k must be a positive integer");
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    if (theta_[i] == 0) throw InputError("theta_" + std::to_string(i + 1) + " must be nonzero");
    for (std::size_t j = i + 1; j < theta_.size(); ++j)
      if (theta_[i] == theta_[j])
        throw InputError("theta values must be pairwise distinct");
  }
  if (!(lam_ > 0 && lam_ < k_))
    throw InputError("lambda = " + rational_to_string(lam_) + " must lie in (0, k)");
  if (entries_.size() != theta_.size() + 1)
    throw InputError("mlfi point needs N+1 exponent slots (j = 0..N)");
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (entries_[j].inv_p < 0 || entries_[j].inv_p > 1)
      throw InputError("1/p_" + std::to_string(j) + " is outside [0,1]");
  }
}

}  // namespace blf

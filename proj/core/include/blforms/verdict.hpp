#pragma once

#include "blforms/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blf {

/// One evaluated inequality or equality. `slack` is exactly LHS - RHS of the
/// cited condition; `strict` records whether the condition demands > (or, for
/// equalities, exact zero). `index` is the excluded/offending index ell when
/// the condition is an ell-family, empty for global conditions.
struct ConditionCheck {
  std::string condition;
  std::optional<std::size_t> index;
  Rational slack;
  bool equality = false;  // condition is an equality (slack must be 0)
  bool strict = false;    // condition demands slack > 0 (else >= 0)
  bool passed = false;
};

/// Exact verdict for one condition system. `violations` is the subset of
/// `checks` that failed; satisfied iff that subset is empty.
class ConditionVerdict {
 public:
  explicit ConditionVerdict(std::string name) : name_(std::move(name)) {}

  /// Records an inequality check: slack >= 0, or > 0 when strict.
  void check_ge(std::string condition, std::optional<std::size_t> index, Rational slack,
                bool strict = false);
  /// Records an equality check: slack must be exactly 0.
  void check_eq(std::string condition, std::optional<std::size_t> index, Rational slack);

  const std::string& name() const { return name_; }
  bool satisfied() const;
  const std::vector<ConditionCheck>& checks() const { return checks_; }
  std::vector<ConditionCheck> violations() const;

  /// Slack of the first check with this tag (and index, when given).
  const Rational& slack(const std::string& condition,
                        std::optional<std::size_t> index = std::nullopt) const;

  /// One-line human summary of the violations ("satisfied" when none).
  std::string describe() const;

 private:
  std::string name_;
  std::vector<ConditionCheck> checks_;
};

}  // namespace blf

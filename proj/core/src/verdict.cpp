#include "blforms/verdict.hpp"

#include <utility>

namespace blf {

void ConditionVerdict::check_ge(std::string condition, std::optional<std::size_t> index,
                                Rational slack, bool strict) {
  ConditionCheck c;
  c.condition = std::move(condition);
  c.index = index;
  c.passed = strict ? (slack > 0) : (slack >= 0);
  c.slack = std::move(slack);
  c.strict = strict;
  checks_.push_back(std::move(c));
}

void ConditionVerdict::check_eq(std::string condition, std::optional<std::size_t> index,
                                Rational slack) {
  ConditionCheck c;
  c.condition = std::move(condition);
  c.index = index;
  c.passed = (slack == 0);
  c.slack = std::move(slack);
  c.equality = true;
  checks_.push_back(std::move(c));
}

bool ConditionVerdict::satisfied() const {
  for (const auto& c : checks_)
    if (!c.passed) return false;
  return true;
}

std::vector<ConditionCheck> ConditionVerdict::violations() const {
  std::vector<ConditionCheck> out;
  for (const auto& c : checks_)
    if (!c.passed) out.push_back(c);
  return out;
}

const Rational& ConditionVerdict::slack(const std::string& condition,
                                        std::optional<std::size_t> index) const {
  for (const auto& c : checks_) {
    if (c.condition == condition && (!index || c.index == index)) return c.slack;
  }
  throw InputError("no check named '" + condition + "' in verdict " + name_);
}

std::string ConditionVerdict::describe() const {
  if (satisfied()) return name_ + ": satisfied";
  std::string s = name_ + ": violated";
  for (const auto& c : checks_) {
    if (c.passed) continue;
    s += " [" + c.condition;
    if (c.index) s += " ell=" + std::to_string(*c.index);
    s += " slack=" + rational_to_string(c.slack) + "]";
  }
  return s;
}

}  // namespace blf

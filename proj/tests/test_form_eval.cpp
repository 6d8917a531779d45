#include "blforms/form_eval.hpp"

#include "blforms/rng.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace blf;
using namespace blf::testing;

namespace {

FormInstance unit_indicator_instance(int k = 1) {
  VectorFamily fam = standard_family(k);
  std::vector<PiecewisePowerFunction> fns(3, PiecewisePowerFunction::indicator(k, 0, 1));
  return FormInstance(fam, std::move(fns));
}

}  // namespace

TEST_CASE("exact polygon value of the unit-indicator instance is 3") {
  FormInstance inst = unit_indicator_instance();
  CHECK(evaluate_form_exact_rational(inst) == Rational(3));
  EvalResult r = evaluate_form_exact(inst);
  CHECK(r.value == 3.0);
  CHECK(r.error_bound == 0.0);
  CHECK(r.method == EvalMethod::ExactPolygon);
}

TEST_CASE("separable two-slot instance multiplies interval lengths") {
  VectorFamily fam({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, 1);
  std::vector<PiecewisePowerFunction> fns(2, PiecewisePowerFunction::indicator(1, 0, 1));
  CHECK(evaluate_form_exact_rational(FormInstance(fam, std::move(fns))) == Rational(4));
}

TEST_CASE("zero slots and amplitude weights") {
  VectorFamily fam = standard_family();
  std::vector<PiecewisePowerFunction> fns(3, PiecewisePowerFunction::indicator(1, 0, 1));
  fns[1] = PiecewisePowerFunction::zero(1);
  CHECK(evaluate_form_exact_rational(FormInstance(fam, fns)).is_zero());

  // Amplitudes scale the value linearly.
  std::vector<PiecewisePowerFunction> weighted(3, PiecewisePowerFunction::indicator(1, 0, 1));
  weighted[0] = PiecewisePowerFunction::indicator(1, 0, 1, 2.5);
  CHECK(evaluate_form_exact_rational(FormInstance(fam, std::move(weighted))) ==
        Rational(15, 2));
}

TEST_CASE("multi-piece functions decompose over piece choices") {
  VectorFamily fam({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, 1);
  PiecewisePowerFunction steps(1, {{0, 1, 1, 0}, {1, 2, 2, 0}});
  // int steps(x1) dx1 = 2 + 4 = 6 per axis; product form: 36.
  CHECK(evaluate_form_exact_rational(FormInstance(fam, {steps, steps})) == Rational(36));
}

TEST_CASE("exact path preconditions") {
  VectorFamily fam = standard_family();
  std::vector<PiecewisePowerFunction> power_fns(3, PiecewisePowerFunction::power(1, -0.5, 0, 1));
  CHECK_THROWS_AS(evaluate_form_exact(FormInstance(fam, power_fns)), PreconditionError);

  std::vector<PiecewisePowerFunction> k2(3, PiecewisePowerFunction::indicator(2, 0, 1));
  CHECK_THROWS_AS(evaluate_form_exact(FormInstance(standard_family(2), k2)), PreconditionError);
}

TEST_CASE("monte carlo agrees with the exact polygon value") {
  FormInstance inst = unit_indicator_instance();
  McOptions opts;
  opts.budget = 200'000;
  EvalResult mc = evaluate_form_mc(inst, opts);
  CHECK(mc.method == EvalMethod::MonteCarlo);
  CHECK(mc.error_bound > 0);
  CHECK(std::abs(mc.value - 3.0) <= 3 * mc.error_bound);
}

TEST_CASE("monte carlo is deterministic and worker-invariant") {
  FormInstance inst = unit_indicator_instance();
  McOptions opts;
  opts.budget = 50'000;
  opts.seed = 9;
  EvalResult a = evaluate_form_mc(inst, opts);
  EvalResult b = evaluate_form_mc(inst, opts);
  CHECK(a.value == b.value);
  CHECK(a.error_bound == b.error_bound);

  // The BLFORM_THREADS cap must not change any digit of the result.
  setenv("BLFORM_THREADS", "1", 1);
  EvalResult single = evaluate_form_mc(inst, opts);
  setenv("BLFORM_THREADS", "4", 1);
  EvalResult multi = evaluate_form_mc(inst, opts);
  unsetenv("BLFORM_THREADS");
  CHECK(single.value == multi.value);
  CHECK(single.error_bound == multi.error_bound);
}

TEST_CASE("monte carlo handles zero functions and unbounded support errors") {
  VectorFamily fam = standard_family();
  std::vector<PiecewisePowerFunction> with_zero(3, PiecewisePowerFunction::indicator(1, 0, 1));
  with_zero[2] = PiecewisePowerFunction::zero(1);
  EvalResult z = evaluate_form_mc(FormInstance(fam, with_zero));
  CHECK(z.value == 0.0);
  CHECK(z.error_bound == 0.0);

  std::vector<PiecewisePowerFunction> unbounded{
      PiecewisePowerFunction::indicator(1, 0, 1),
      PiecewisePowerFunction::power(1, -0.5, 1.0),
      PiecewisePowerFunction::power(1, -0.5, 1.0)};
  CHECK_THROWS_AS(evaluate_form_mc(FormInstance(fam, unbounded)), PreconditionError);
}

TEST_CASE("monte carlo evaluates weighted power pieces") {
  // With v = ((1,0),(0,1)) the integral separates exactly:
  // (int_{1<=|t|<2} |t|^{-1/2} dt)^2 = (2(2 sqrt 2 - 2))^2.
  VectorFamily fam({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, 1);
  std::vector<PiecewisePowerFunction> fns(2, PiecewisePowerFunction::power(1, -0.5, 1, 2));
  McOptions opts;
  opts.budget = 400'000;
  EvalResult mc = evaluate_form_mc(FormInstance(fam, std::move(fns)), opts);
  double expected = std::pow(2.0 * (2.0 * std::sqrt(2.0) - 2.0), 2.0);
  CHECK(std::abs(mc.value - expected) <= 4 * mc.error_bound);
}

TEST_CASE("tensor evaluation squares the one-dimensional value") {
  VectorFamily fam2 = standard_family(2);
  std::vector<PiecewisePowerFunction> base(3, PiecewisePowerFunction::indicator(1, 0, 1));
  McOptions opts;
  opts.budget = 600'000;
  EvalResult mc = evaluate_form_mc_tensor(fam2, base, opts);
  // Lambda_2 on tensor squares = (Lambda_1 value)^2 = 9.
  CHECK(std::abs(mc.value - 9.0) <= std::max(4 * mc.error_bound, 0.05 * 9.0));
}

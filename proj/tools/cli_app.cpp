#include "cli_app.hpp"

#include "blforms/conditions.hpp"
#include "blforms/form_eval.hpp"
#include "blforms/json_io.hpp"
#include "blforms/reduction.hpp"
#include "blforms/witness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace blf::cli {

namespace {

using io::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNegative = 2;

json load_input(const std::string& spec, std::istream& stdin_stream) {
  std::string text;
  if (spec == "-") {
    std::ostringstream os;
    os << stdin_stream.rdbuf();
    text = os.str();
  } else if (!spec.empty() && (spec[0] == '{' || spec[0] == '[')) {
    text = spec;
  } else {
    std::ifstream in(spec);
    if (!in) throw InputError("cannot open input file '" + spec + "'");
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw InputError("input is not valid JSON");
  return j;
}

struct OutputOptions {
  std::string format = "json";
};

void emit(const json& j, const OutputOptions& opts, std::ostream& out,
          const std::string& human_summary) {
  if (opts.format == "human") {
    out << human_summary << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
}

Ladder parse_ladder(const std::string& text) {
  Ladder lad;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> lad.lo >> c1 >> lad.hi >> c2 >> lad.points) || c1 != ':' || c2 != ':')
    throw InputError("--ladder expects lo:hi:n");
  return lad;
}

int cmd_check(const json& input, const OutputOptions& opts, std::ostream& out) {
  IndexPoint idx = io::index_point_from_json(io::json(input.at("index")), "/index");
  VectorFamily fam = io::vector_family_from_json(input.at("family"), "/family");
  ConditionVerdict suff = check_sufficient(idx, fam);
  ConditionVerdict nec = check_necessary(idx, fam);
  Classification cls = classify(idx, fam);
  json report{{"classification", to_string(cls)},
              {"sufficient", io::verdict_to_json(suff)},
              {"necessary", io::verdict_to_json(nec)}};
  if (idx.has_lorentz()) report["lorentz"] = io::verdict_to_json(classify_lorentz(idx, fam));
  std::ostringstream human;
  human << to_string(cls) << "\n  " << suff.describe() << "\n  " << nec.describe();
  emit(report, opts, out, human.str());
  return cls == Classification::NecessaryFail ? kExitNegative : kExitOk;
}

int cmd_reduce(const json& input, const OutputOptions& opts, std::ostream& out) {
  VectorFamily fam = io::vector_family_from_json(input.at("family"), "/family");
  const json& lj = input.at("lambda");
  std::vector<Rational> lambda;
  for (std::size_t i = 0; i < lj.size(); ++i)
    lambda.push_back(io::rational_from_json(lj[i], "/lambda/" + std::to_string(i)));
  ReductionCertificate cert = reduce(lambda, fam);
  if (input.contains("index"))
    attach_exponents(cert, io::index_point_from_json(input["index"], "/index"));
  ConditionVerdict check = verify_certificate(cert);
  json report = io::certificate_to_json(cert);
  report["verified"] = check.satisfied();
  std::ostringstream human;
  human << "certificate with " << cert.leaves.size() << " leaves, depth " << cert.depth
        << (check.satisfied() ? ", verified" : ", VERIFICATION FAILED");
  emit(report, opts, out, human.str());
  return check.satisfied() ? kExitOk : kExitNegative;
}

int cmd_eval(const json& input, const std::string& method, std::uint64_t seed,
             std::uint64_t budget, const OutputOptions& opts, std::ostream& out) {
  FormInstance inst = io::form_instance_from_json(input);
  EvalResult result;
  bool exact_ok = inst.fam.k() == 1;
  for (const auto& f : inst.functions)
    for (const auto& p : f.pieces())
      if (p.gamma != 0 || !std::isfinite(p.b)) exact_ok = false;
  if (method == "exact" || (method == "auto" && exact_ok)) {
    result = evaluate_form_exact(inst);
  } else {
    McOptions mc;
    mc.seed = seed;
    mc.budget = budget;
    result = evaluate_form_mc(inst, mc);
  }
  std::ostringstream human;
  human << "Lambda = " << result.value;
  if (result.method == EvalMethod::MonteCarlo) human << " +- " << result.error_bound << " (99%)";
  emit(io::eval_result_to_json(result), opts, out, human.str());
  return kExitOk;
}

int cmd_witness(const json& input, std::uint64_t seed, const std::optional<Ladder>& ladder,
                double tol, const OutputOptions& opts, std::ostream& out) {
  WitnessSpec spec = io::witness_spec_from_json(input);
  if (seed != 0) spec.seed = seed;
  if (ladder) spec.ladder = ladder;
  spec.tol = tol;
  WitnessReport report = run_witness(spec);
  std::ostringstream human;
  human << to_string(report.kind) << ": " << to_string(report.verdict) << " (measured slope "
        << report.measured_slope << ", predicted "
        << rational_to_string(report.predicted_slope) << ")";
  if (opts.format == "csv") {
    out << io::witness_report_to_csv(report);
  } else {
    emit(io::witness_report_to_json(report), opts, out, human.str());
  }
  return report.verdict == WitnessVerdict::Consistent ? kExitOk : kExitNegative;
}

int cmd_compare(const json& input, std::uint64_t seed, std::optional<std::uint64_t> budget,
                const OutputOptions& opts, std::ostream& out) {
  MlfiConditionSet a = mlfi_set_from_name(input.at("setA").get<std::string>());
  MlfiConditionSet b = mlfi_set_from_name(input.at("setB").get<std::string>());
  CompareConfig cfg;
  if (input.contains("arity")) cfg.arity = input["arity"].get<std::size_t>();
  if (input.contains("k")) cfg.k = input["k"].get<int>();
  cfg.seed = seed;
  if (budget) cfg.budget = *budget;
  CompareReport report = compare_condition_sets(a, b, cfg);
  std::ostringstream human;
  human << to_string(a) << " vs " << to_string(b) << ": onlyA=" << report.count_only_a
        << " onlyB=" << report.count_only_b << " both=" << report.count_both
        << " neither=" << report.count_neither;
  emit(io::compare_report_to_json(report), opts, out, human.str());
  return kExitOk;
}

int cmd_mlfi(const json& input, const std::string& set_name, const OutputOptions& opts,
             std::ostream& out) {
  MlfiIndexPoint idx = io::mlfi_point_from_json(input, "");
  MlfiConditionSet set = mlfi_set_from_name(set_name);
  ConditionVerdict verdict = check_mlfi_set(set, idx);
  emit(io::verdict_to_json(verdict), opts, out, verdict.describe());
  return verdict.satisfied() ? kExitOk : kExitNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact condition checkers, reduction certificates and scaling experiments for "
               "Brascamp-Lieb forms in power-weighted Lorentz spaces"};
  app.require_subcommand(1);

  std::string input_spec = "-";
  std::string format = "json";
  std::string method = "auto";
  std::string set_name = "thm41";
  std::string ladder_text;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
  double tol = 1e-8;

  auto add_common = [&](CLI::App* cmd, bool with_input = true) {
    if (with_input)
      cmd->add_option("input", input_spec, "input file, inline JSON, or - for stdin");
    cmd->add_option("--seed", seed, "RNG seed (default 0, fully deterministic)");
    cmd->add_option("--budget", budget, "sample budget for Monte Carlo paths");
    cmd->add_option("--tol", tol, "quadrature tolerance");
    cmd->add_option("--format", format, "json|csv|human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
  };

  CLI::App* check = app.add_subcommand("check", "classify an index point against the "
                                                "sufficiency and necessity systems");
  add_common(check);
  CLI::App* reduce_cmd =
      app.add_subcommand("reduce", "run the substitution algorithm and emit its certificate");
  add_common(reduce_cmd);
  CLI::App* eval = app.add_subcommand("eval", "evaluate the form on a function family");
  add_common(eval);
  eval->add_option("--method", method, "exact|mc|auto")
      ->check(CLI::IsMember({"exact", "mc", "auto"}));
  CLI::App* witness =
      app.add_subcommand("witness", "run a necessity construction along a parameter ladder");
  add_common(witness);
  witness->add_option("--ladder", ladder_text, "geometric ladder lo:hi:n");
  CLI::App* compare = app.add_subcommand("compare", "sample two condition sets and report "
                                                    "their differences");
  add_common(compare);
  CLI::App* mlfi = app.add_subcommand("mlfi", "check a fractional-integral index point");
  add_common(mlfi);
  mlfi->add_option("--set", set_name, "thm41|stein-weiss|grafakos|komori-furuya");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  OutputOptions opts{format};
  try {
    if (check->parsed()) return cmd_check(load_input(input_spec, std::cin), opts, out);
    if (reduce_cmd->parsed()) return cmd_reduce(load_input(input_spec, std::cin), opts, out);
    if (eval->parsed())
      return cmd_eval(load_input(input_spec, std::cin), method, seed, budget, opts, out);
    if (witness->parsed()) {
      std::optional<Ladder> ladder;
      if (!ladder_text.empty()) ladder = parse_ladder(ladder_text);
      return cmd_witness(load_input(input_spec, std::cin), seed, ladder, tol, opts, out);
    }
    if (compare->parsed()) {
      std::optional<std::uint64_t> compare_budget;
      if (compare->count("--budget") > 0) compare_budget = budget;
      return cmd_compare(load_input(input_spec, std::cin), seed, compare_budget, opts, out);
    }
    if (mlfi->parsed()) return cmd_mlfi(load_input(input_spec, std::cin), set_name, opts, out);
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  err << "no subcommand\n";
  return kExitInput;
}

}  // namespace blf::cli

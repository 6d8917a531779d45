#include "blforms/json_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace blf::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing");
  return *it;
}

double number_from_json(const json& j, const std::string& path, bool allow_inf = false) {
  if (j.is_number()) return j.get<double>();
  if (allow_inf && j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  }
  fail(path, allow_inf ? "expected a number or \"inf\"" : "expected a number");
}

}  // namespace

Rational rational_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      fail(path, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number())
    fail(path, "non-integer numeric literals lose exactness; write the rational as a string "
               "like \"7/10\"");
  fail(path, "expected a rational string like \"7/12\"");
}

json rational_to_json(const Rational& q) { return rational_to_string(q); }

VectorFamily vector_family_from_json(const json& j, const std::string& path) {
  const json& vecs = member(j, "vectors", path);
  if (!vecs.is_array()) fail(path + "/vectors", "expected an array of [x, y] pairs");
  std::vector<Vec2> vs;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    const json& v = vecs[i];
    std::string vpath = path + "/vectors/" + std::to_string(i);
    if (!v.is_array() || v.size() != 2) fail(vpath, "expected [x, y]");
    vs.push_back({rational_from_json(v[0], vpath + "/0"), rational_from_json(v[1], vpath + "/1")});
  }
  int k = 1;
  if (j.contains("k")) {
    if (!j["k"].is_number_integer()) fail(path + "/k", "expected a positive integer");
    k = j["k"].get<int>();
  }
  try {
    return VectorFamily(std::move(vs), k);
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

json vector_family_to_json(const VectorFamily& fam) {
  json vecs = json::array();
  for (const auto& v : fam.vectors())
    vecs.push_back(json::array({rational_to_json(v.x), rational_to_json(v.y)}));
  return json{{"vectors", vecs}, {"k", fam.k()}};
}

IndexPoint index_point_from_json(const json& j, const std::string& path) {
  const json& entries = member(j, "entries", path);
  if (!entries.is_array()) fail(path + "/entries", "expected an array");
  std::vector<ExponentEntry> es;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    std::string epath = path + "/entries/" + std::to_string(i);
    es.push_back({rational_from_json(member(e, "invP", epath), epath + "/invP"),
                  rational_from_json(member(e, "lam", epath), epath + "/lam")});
  }
  std::optional<std::vector<Rational>> lorentz;
  if (j.contains("lorentz") && !j["lorentz"].is_null()) {
    const json& lr = j["lorentz"];
    if (!lr.is_array()) fail(path + "/lorentz", "expected an array of rationals");
    std::vector<Rational> qs;
    for (std::size_t i = 0; i < lr.size(); ++i)
      qs.push_back(rational_from_json(lr[i], path + "/lorentz/" + std::to_string(i)));
    lorentz = std::move(qs);
  }
  try {
    return IndexPoint(std::move(es), std::move(lorentz));
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

json index_point_to_json(const IndexPoint& idx) {
  json entries = json::array();
  for (const auto& e : idx.entries())
    entries.push_back({{"invP", rational_to_json(e.inv_p)}, {"lam", rational_to_json(e.lam)}});
  json out{{"entries", entries}};
  if (idx.has_lorentz()) {
    json lr = json::array();
    for (const auto& q : idx.lorentz()) lr.push_back(rational_to_json(q));
    out["lorentz"] = lr;
  }
  return out;
}

MlfiIndexPoint mlfi_point_from_json(const json& j, const std::string& path) {
  const json& thetas = member(j, "theta", path);
  if (!thetas.is_array()) fail(path + "/theta", "expected an array of rationals");
  std::vector<Rational> th;
  for (std::size_t i = 0; i < thetas.size(); ++i)
    th.push_back(rational_from_json(thetas[i], path + "/theta/" + std::to_string(i)));
  Rational lam = rational_from_json(member(j, "lam", path), path + "/lam");
  const json& entries = member(j, "entries", path);
  if (!entries.is_array()) fail(path + "/entries", "expected an array");
  std::vector<ExponentEntry> es;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    std::string epath = path + "/entries/" + std::to_string(i);
    es.push_back({rational_from_json(member(e, "invP", epath), epath + "/invP"),
                  rational_from_json(member(e, "lam", epath), epath + "/lam")});
  }
  int k = 1;
  if (j.contains("k")) k = j["k"].get<int>();
  try {
    return MlfiIndexPoint(std::move(th), std::move(lam), std::move(es), k);
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

json mlfi_point_to_json(const MlfiIndexPoint& idx) {
  json th = json::array();
  for (const auto& t : idx.theta()) th.push_back(rational_to_json(t));
  json entries = json::array();
  for (const auto& e : idx.entries())
    entries.push_back({{"invP", rational_to_json(e.inv_p)}, {"lam", rational_to_json(e.lam)}});
  return json{{"theta", th}, {"lam", rational_to_json(idx.lam())}, {"entries", entries},
              {"k", idx.k()}};
}

json verdict_to_json(const ConditionVerdict& v) {
  json checks = json::array();
  json violations = json::array();
  for (const auto& c : v.checks()) {
    json entry{{"condition", c.condition},
               {"slack", rational_to_json(c.slack)},
               {"passed", c.passed}};
    if (c.index) {
      entry["index"] = *c.index;
    } else {
      entry["index"] = "global";
    }
    if (c.equality) entry["equality"] = true;
    if (c.strict) entry["strict"] = true;
    checks.push_back(entry);
    if (!c.passed) violations.push_back(entry);
  }
  return json{{"name", v.name()},
              {"satisfied", v.satisfied()},
              {"violations", violations},
              {"checks", checks}};
}

PiecewisePowerFunction piecewise_from_json(const json& j, const std::string& path) {
  int k = 1;
  if (j.contains("k")) k = j["k"].get<int>();
  const json& pieces = member(j, "pieces", path);
  if (!pieces.is_array()) fail(path + "/pieces", "expected an array");
  std::vector<PowerPiece> ps;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const json& p = pieces[i];
    std::string ppath = path + "/pieces/" + std::to_string(i);
    ps.push_back({number_from_json(member(p, "a", ppath), ppath + "/a"),
                  number_from_json(member(p, "b", ppath), ppath + "/b", /*allow_inf=*/true),
                  number_from_json(member(p, "c", ppath), ppath + "/c"),
                  number_from_json(member(p, "gamma", ppath), ppath + "/gamma")});
  }
  try {
    return PiecewisePowerFunction(k, std::move(ps));
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

json piecewise_to_json(const PiecewisePowerFunction& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces()) {
    json entry{{"a", p.a}, {"c", p.c}, {"gamma", p.gamma}};
    if (std::isfinite(p.b)) {
      entry["b"] = p.b;
    } else {
      entry["b"] = "inf";
    }
    pieces.push_back(entry);
  }
  return json{{"k", f.k()}, {"pieces", pieces}};
}

FormInstance form_instance_from_json(const json& j, const std::string& path) {
  VectorFamily fam = vector_family_from_json(member(j, "family", path), path + "/family");
  const json& fns = member(j, "functions", path);
  if (!fns.is_array()) fail(path + "/functions", "expected an array");
  std::vector<PiecewisePowerFunction> functions;
  for (std::size_t i = 0; i < fns.size(); ++i)
    functions.push_back(piecewise_from_json(fns[i], path + "/functions/" + std::to_string(i)));
  try {
    return FormInstance(std::move(fam), std::move(functions));
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

json form_instance_to_json(const FormInstance& inst) {
  json fns = json::array();
  for (const auto& f : inst.functions) fns.push_back(piecewise_to_json(f));
  return json{{"family", vector_family_to_json(inst.fam)}, {"functions", fns}};
}

json eval_result_to_json(const EvalResult& r) {
  return json{{"value", r.value},
              {"errorBound", r.error_bound},
              {"method", to_string(r.method)},
              {"seed", r.seed},
              {"sampleCount", r.sample_count}};
}

namespace {

json rational_vector_to_json(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(rational_to_json(x));
  return out;
}

std::vector<Rational> rational_vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(rational_from_json(j[i], path + "/" + std::to_string(i)));
  return out;
}

json node_to_json(const ReductionCertificate& cert, int id) {
  const SubstitutionNode& node = cert.nodes[id];
  json out{{"alpha", rational_vector_to_json(node.alpha)}};
  if (node.is_leaf()) {
    out["leaf"] = true;
  } else {
    out["split"] = json{{"j0", node.j0},
                        {"j1", node.j1},
                        {"j2", node.j2},
                        {"delta", rational_to_json(node.delta)},
                        {"c1", rational_to_json(node.c1)},
                        {"c2", rational_to_json(node.c2)},
                        {"beta", node_to_json(cert, node.beta_child)},
                        {"gamma", node_to_json(cert, node.gamma_child)}};
  }
  return out;
}

int node_from_json(const json& j, ReductionCertificate& cert, const std::string& path) {
  int id = static_cast<int>(cert.nodes.size());
  cert.nodes.emplace_back();
  cert.nodes[id].alpha = rational_vector_from_json(member(j, "alpha", path), path + "/alpha");
  if (j.contains("split")) {
    const json& s = j["split"];
    std::string spath = path + "/split";
    SubstitutionNode tmp;
    tmp.alpha = cert.nodes[id].alpha;
    tmp.j0 = member(s, "j0", spath).get<std::size_t>();
    tmp.j1 = member(s, "j1", spath).get<std::size_t>();
    tmp.j2 = member(s, "j2", spath).get<std::size_t>();
    tmp.delta = rational_from_json(member(s, "delta", spath), spath + "/delta");
    tmp.c1 = rational_from_json(member(s, "c1", spath), spath + "/c1");
    tmp.c2 = rational_from_json(member(s, "c2", spath), spath + "/c2");
    tmp.beta_child = node_from_json(member(s, "beta", spath), cert, spath + "/beta");
    tmp.gamma_child = node_from_json(member(s, "gamma", spath), cert, spath + "/gamma");
    cert.nodes[id] = std::move(tmp);
  }
  return id;
}

}  // namespace

json certificate_to_json(const ReductionCertificate& cert) {
  json leaves = json::array();
  for (const auto& leaf : cert.leaves) {
    json entry{{"alpha", rational_vector_to_json(leaf.alpha)}, {"constant", leaf.constant}};
    if (leaf.q_exponents) entry["qExponents"] = rational_vector_to_json(*leaf.q_exponents);
    leaves.push_back(entry);
  }
  return json{{"family", vector_family_to_json(cert.fam)},
              {"sourceLambda", rational_vector_to_json(cert.source_lambda)},
              {"depth", cert.depth},
              {"root", node_to_json(cert, 0)},
              {"leaves", leaves}};
}

ReductionCertificate certificate_from_json(const json& j) {
  VectorFamily fam = vector_family_from_json(member(j, "family", ""), "/family");
  std::vector<Rational> lambda =
      rational_vector_from_json(member(j, "sourceLambda", ""), "/sourceLambda");
  ReductionCertificate cert{std::move(fam), std::move(lambda), {}, {}, 0};
  node_from_json(member(j, "root", ""), cert, "/root");
  cert.depth = j.value("depth", 0);
  const json& leaves = member(j, "leaves", "");
  if (!leaves.is_array()) fail("/leaves", "expected an array");
  // Re-associate leaf records with tree nodes in depth-first order.
  std::vector<int> leaf_nodes;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (cert.nodes[id].is_leaf()) {
      leaf_nodes.push_back(id);
    } else {
      stack.push_back(cert.nodes[id].gamma_child);
      stack.push_back(cert.nodes[id].beta_child);
    }
  }
  if (leaf_nodes.size() != leaves.size()) fail("/leaves", "leaf count differs from the tree");
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    std::string lpath = "/leaves/" + std::to_string(i);
    CertificateLeaf leaf;
    leaf.node = leaf_nodes[i];
    leaf.alpha = rational_vector_from_json(member(leaves[i], "alpha", lpath), lpath + "/alpha");
    leaf.constant = number_from_json(member(leaves[i], "constant", lpath), lpath + "/constant");
    if (leaves[i].contains("qExponents"))
      leaf.q_exponents = rational_vector_from_json(leaves[i]["qExponents"], lpath + "/qExponents");
    cert.leaves.push_back(std::move(leaf));
  }
  return cert;
}

json witness_report_to_json(const WitnessReport& report) {
  json data = json::array();
  for (const auto& d : report.data) {
    json norms = json::array();
    for (double n : d.norms) norms.push_back(n);
    data.push_back({{"parameter", d.parameter},
                    {"lambda", d.lambda_value},
                    {"norms", norms},
                    {"ratio", d.ratio}});
  }
  json out{{"kind", to_string(report.kind)},
           {"measuredSlope", report.measured_slope},
           {"predictedSlope", rational_to_json(report.predicted_slope)},
           {"rSquared", report.r_squared},
           {"residual", report.residual},
           {"verdict", to_string(report.verdict)},
           {"dataPoints", data}};
  if (!report.note.empty()) out["note"] = report.note;
  return out;
}

std::string witness_report_to_csv(const WitnessReport& report) {
  std::size_t max_norms = 0;
  for (const auto& d : report.data) max_norms = std::max(max_norms, d.norms.size());
  std::ostringstream os;
  os.precision(17);
  os << "parameter,lambda";
  for (std::size_t j = 0; j < max_norms; ++j) os << ",norm" << j;
  os << ",ratio\n";
  for (const auto& d : report.data) {
    os << d.parameter << "," << d.lambda_value;
    for (std::size_t j = 0; j < max_norms; ++j)
      os << "," << (j < d.norms.size() ? d.norms[j] : 0.0);
    os << "," << d.ratio << "\n";
  }
  return os.str();
}

WitnessSpec witness_spec_from_json(const json& j) {
  WitnessSpec spec;
  spec.kind = witness_kind_from_name(member(j, "kind", "").get<std::string>());
  if (j.contains("index")) spec.idx = index_point_from_json(j["index"], "/index");
  if (j.contains("family")) spec.fam = vector_family_from_json(j["family"], "/family");
  if (j.contains("ell")) spec.ell = j["ell"].get<std::size_t>();
  if (j.contains("epsilon")) spec.epsilon = rational_from_json(j["epsilon"], "/epsilon");
  if (j.contains("ladder")) {
    const json& l = j["ladder"];
    Ladder lad;
    lad.lo = number_from_json(member(l, "lo", "/ladder"), "/ladder/lo");
    lad.hi = number_from_json(member(l, "hi", "/ladder"), "/ladder/hi");
    lad.points = member(l, "n", "/ladder").get<int>();
    spec.ladder = lad;
  }
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("lam2")) spec.lam2 = rational_from_json(j["lam2"], "/lam2");
  if (j.contains("lam3") && !j["lam3"].is_null())
    spec.lam3 = rational_from_json(j["lam3"], "/lam3");
  if (j.contains("xs")) {
    spec.xs.clear();
    for (std::size_t i = 0; i < j["xs"].size(); ++i)
      spec.xs.push_back(number_from_json(j["xs"][i], "/xs/" + std::to_string(i)));
  }
  if (j.contains("mode")) spec.mode = sw2_mode_from_name(j["mode"].get<std::string>());
  if (j.contains("k")) spec.k = j["k"].get<int>();
  return spec;
}

json compare_report_to_json(const CompareReport& report) {
  auto bucket = [&](const std::vector<ComparePoint>& points) {
    json out = json::array();
    for (const auto& p : points) {
      out.push_back({{"point", mlfi_point_to_json(p.point)},
                     {"inA", p.in_a},
                     {"inB", p.in_b},
                     {"pinned", p.pinned}});
    }
    return out;
  };
  return json{{"setA", to_string(report.set_a)},
              {"setB", to_string(report.set_b)},
              {"sampled", report.sampled},
              {"counts",
               {{"onlyA", report.count_only_a},
                {"onlyB", report.count_only_b},
                {"both", report.count_both},
                {"neither", report.count_neither}}},
              {"onlyA", bucket(report.only_a)},
              {"onlyB", bucket(report.only_b)},
              {"both", bucket(report.both)}};
}

}  // namespace blf::io

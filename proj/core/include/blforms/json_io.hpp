#pragma once

#include "blforms/conditions.hpp"
#include "blforms/form_eval.hpp"
#include "blforms/index_point.hpp"
#include "blforms/piecewise_power.hpp"
#include "blforms/reduction.hpp"
#include "blforms/vector_family.hpp"
#include "blforms/verdict.hpp"
#include "blforms/witness.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace blf::io {

using json = nlohmann::json;

/// Rationals travel as strings ("7/12", "-1/8") everywhere so exactness
/// survives the wire. `path` feeds the JSON-pointer-style error messages.
Rational rational_from_json(const json& j, const std::string& path);
json rational_to_json(const Rational& q);

VectorFamily vector_family_from_json(const json& j, const std::string& path = "/family");
json vector_family_to_json(const VectorFamily& fam);

IndexPoint index_point_from_json(const json& j, const std::string& path = "/index");
json index_point_to_json(const IndexPoint& idx);

MlfiIndexPoint mlfi_point_from_json(const json& j, const std::string& path = "/mlfi");
json mlfi_point_to_json(const MlfiIndexPoint& idx);

json verdict_to_json(const ConditionVerdict& v);

PiecewisePowerFunction piecewise_from_json(const json& j, const std::string& path);
json piecewise_to_json(const PiecewisePowerFunction& f);

FormInstance form_instance_from_json(const json& j, const std::string& path = "");
json form_instance_to_json(const FormInstance& inst);

json eval_result_to_json(const EvalResult& r);

json certificate_to_json(const ReductionCertificate& cert);
ReductionCertificate certificate_from_json(const json& j);

json witness_report_to_json(const WitnessReport& report);
std::string witness_report_to_csv(const WitnessReport& report);

WitnessSpec witness_spec_from_json(const json& j);

json compare_report_to_json(const CompareReport& report);

}  // namespace blf::io

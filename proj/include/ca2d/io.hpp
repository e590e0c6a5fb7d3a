#pragma once

#include <string>

#include "ca2d/bounds.hpp"
#include "ca2d/entropy.hpp"

#include "json.hpp"

namespace ca2d {

using ordered_json = nlohmann::ordered_json;

ordered_json entropy_to_json(const EntropyEstimate& est);
std::string entropy_to_text(const EntropyEstimate& est);

ordered_json empirical_to_json(const EmpiricalEntropy& est);
std::string empirical_to_text(const EmpiricalEntropy& est);

ordered_json bound_report_to_json(const BoundReport& rep);
std::string bound_report_to_text(const BoundReport& rep);

} // namespace ca2d

#pragma once

#include <json.hpp>

#include "hyperb/operators.hpp"

namespace hyperb {

// {"vertex": "num/den", ...}
nlohmann::json measure_to_json(const Measure& m);
Measure measure_from_json(const nlohmann::json& j);

// [{"simplex": [v...], "coeff": "num/den"}, ...]
nlohmann::json chain_to_json(const RipsComplex& rips, const Chain& f);
Chain chain_from_json(const RipsComplex& rips, const nlohmann::json& j);

// per-degree sparse triplets with exact entries
nlohmann::json operator_to_json(const GradedOp& op);

}  // namespace hyperb

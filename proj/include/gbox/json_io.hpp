#pragma once

#include <json.hpp>

#include "gbox/chained.hpp"
#include "gbox/corrfn.hpp"
#include "gbox/jointbox.hpp"
#include "gbox/lhv.hpp"

namespace gbox {

// Schema: {"two_j": int, "constant": float,
//          "terms": [{"m": int, "n": int, "cos": float, "sin": float}]}
// Terms must be in canonical form, strictly ascending by (m, n).
nlohmann::json to_json(const CorrelationFunction& f);
CorrelationFunction correlation_from_json(const nlohmann::json& j);

// Four blocks keyed "pp", "pm", "mp", "mm", each in the series schema.
nlohmann::json to_json(const JointBox& box);
JointBox jointbox_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LhvModel& model);
LhvModel lhv_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WitnessReport& report);

}  // namespace gbox

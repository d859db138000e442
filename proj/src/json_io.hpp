#pragma once

#include "json.hpp"
#include "ltlbench/clients.hpp"
#include "ltlbench/oracle.hpp"

namespace ltlbench::detail {

nlohmann::json oracle_json(const OracleConfig& c);
OracleConfig oracle_from_json(const nlohmann::json& j);
nlohmann::json model_json(const ModelClientSpec& m);
ModelClientSpec model_from_json(const nlohmann::json& j);

}  // namespace ltlbench::detail

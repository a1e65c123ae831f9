// Copyright 2026 The Negentropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include <json.hpp>
#include "negentropy/decoupling/decoupling.hpp"
#include "negentropy/entropy/entropy.hpp"
#include "negentropy/protocol/protocol.hpp"
#include "negentropy/thermo/thermo.hpp"

namespace negentropy::io {

using nlohmann::json;

/// {"dims": [...], "re": [[...]], "im": [[...]]}, rows in Kronecker order.
json to_json(const quantum::DensityOperator& rho);
/// Parses and validates (including positivity). Throws ParseError.
quantum::DensityOperator density_from_json(const json& doc);

json to_json(const entropy::EntropyReport& report);
json to_json(const thermo::ScheduleConfig& schedule);
json to_json(const thermo::WorkLedger& ledger);
json to_json(const decoupling::DecouplingResult& result);
json to_json(const protocol::ProtocolTranscript& transcript);
json to_json(const protocol::RatePoint& point);

/// Scenario document plus the run parameters that travel with it.
struct ScenarioDocument {
  protocol::Scenario scenario;
  std::vector<int> copies;
};

/// Parses a scenario document. Unknown keys, wrong types and invalid states
/// raise ParseError.
ScenarioDocument scenario_from_json(const json& doc);

}  // namespace negentropy::io

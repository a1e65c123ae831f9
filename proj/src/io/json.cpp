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

#include "negentropy/io/json.hpp"

#include <set>
#include <string>

#include "negentropy/errors.hpp"

namespace negentropy::io {
namespace {

using quantum::Complex;
using quantum::DensityOperator;
using quantum::Matrix;

const std::vector<int> kDefaultCopies = {1, 2, 5, 10, 20, 50};

void require_keys(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
  if (!doc.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("key '") + key + "' has the wrong type");
  }
}

std::vector<std::vector<double>> rows_of(const Matrix& m, bool imaginary) {
  std::vector<std::vector<double>> out(static_cast<size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) {
    auto& row = out[static_cast<size_t>(i)];
    row.reserve(static_cast<size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j) row.push_back(imaginary ? m(i, j).imag() : m(i, j).real());
  }
  return out;
}

json ledger_entries(const thermo::WorkLedger& ledger) {
  json entries = json::array();
  for (const auto& e : ledger.entries()) {
    entries.push_back({{"step", e.step},
                       {"label", e.label},
                       {"dE_kTln2", e.delta_e},
                       {"occupancy", e.occupancy},
                       {"cumulative_kTln2", e.cumulative}});
  }
  return entries;
}

thermo::ScheduleConfig schedule_from_json(const json& doc) {
  require_keys(doc, {"e_max", "delta", "beta"}, "schedule");
  thermo::ScheduleConfig s;
  s.e_max = get_or(doc, "e_max", s.e_max);
  s.delta = get_or(doc, "delta", s.delta);
  s.beta = get_or(doc, "beta", s.beta);
  return s;
}

quantum::RegisterLayout layout_from_json(const json& doc) {
  if (!doc.is_array()) throw ParseError("layout: expected an array of {name, qubits}");
  std::vector<quantum::RegisterLayout::Block> blocks;
  for (const auto& b : doc) {
    require_keys(b, {"name", "qubits"}, "layout block");
    if (!b.contains("name") || !b.contains("qubits")) {
      throw ParseError("layout block: needs name and qubits");
    }
    blocks.push_back({get_or<std::string>(b, "name", ""), get_or<int>(b, "qubits", 0)});
  }
  return quantum::RegisterLayout(std::move(blocks));
}

DensityOperator state_from_amplitudes(const json& doc) {
  require_keys(doc, {"re", "im"}, "amplitudes");
  const auto re = get_or<std::vector<double>>(doc, "re", {});
  const auto im = get_or<std::vector<double>>(doc, "im", std::vector<double>(re.size(), 0.0));
  if (re.size() != im.size() || re.empty()) throw ParseError("amplitudes: re/im length mismatch");
  int qubits = 0;
  while ((size_t{1} << qubits) < re.size()) ++qubits;
  if ((size_t{1} << qubits) != re.size()) throw ParseError("amplitudes: length must be a power of two");
  quantum::Vector v(static_cast<Eigen::Index>(re.size()));
  for (size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
  return quantum::PureState(std::move(v), quantum::Dims(static_cast<size_t>(qubits), 2)).density();
}

}  // namespace

json to_json(const DensityOperator& rho) {
  return {{"dims", rho.dims()},
          {"re", rows_of(rho.matrix(), false)},
          {"im", rows_of(rho.matrix(), true)}};
}

DensityOperator density_from_json(const json& doc) {
  require_keys(doc, {"dims", "re", "im"}, "density operator");
  if (!doc.contains("dims") || !doc.contains("re")) throw ParseError("density operator: needs dims and re");
  try {
    const auto dims = doc.at("dims").get<quantum::Dims>();
    const auto re = doc.at("re").get<std::vector<std::vector<double>>>();
    const auto im = doc.contains("im") ? doc.at("im").get<std::vector<std::vector<double>>>()
                                       : std::vector<std::vector<double>>{};
    const size_t d = re.size();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (size_t i = 0; i < d; ++i) {
      if (re[i].size() != d || (!im.empty() && (im.size() != d || im[i].size() != d))) {
        throw ParseError("density operator: matrix must be square");
      }
      for (size_t j = 0; j < d; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            Complex(re[i][j], im.empty() ? 0.0 : im[i][j]);
      }
    }
    DensityOperator rho(std::move(m), dims);
    quantum::check_invariants(rho);
    return rho;
  } catch (const json::exception& e) {
    throw ParseError(std::string("density operator: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("density operator: ") + e.what());
  }
}

json to_json(const entropy::EntropyReport& report) {
  json out = {{"value", report.value},
              {"epsilon", report.epsilon},
              {"kind", entropy::to_string(report.kind)},
              {"method", entropy::to_string(report.method)},
              {"solver_gap", report.solver_gap}};
  out["certificate"] = report.certificate ? to_json(*report.certificate) : json(nullptr);
  if (report.smoothed_state) out["smoothed_state"] = to_json(*report.smoothed_state);
  if (report.smoothing_distance) out["smoothing_distance"] = *report.smoothing_distance;
  return out;
}

json to_json(const thermo::ScheduleConfig& schedule) {
  return {{"e_max", schedule.e_max}, {"delta", schedule.delta}, {"beta", schedule.beta}};
}

json to_json(const thermo::WorkLedger& ledger) {
  return {{"total_kTln2", ledger.total()},
          {"bath_energy_kTln2", ledger.bath_energy()},
          {"entries", ledger_entries(ledger)}};
}

json to_json(const decoupling::DecouplingResult& r) {
  return {{"m", r.m},
          {"unitary_seed", r.unitary_seed},
          {"distance", r.distance},
          {"bound", r.bound},
          {"samples", r.samples},
          {"mean_distance", r.mean_distance},
          {"standard_error", r.standard_error},
          {"hmin", r.hmin}};
}

json to_json(const protocol::ProtocolTranscript& t) {
  json out = {{"scenario", t.scenario},
              {"n", t.n},
              {"m", t.m},
              {"ell", t.ell},
              {"unitary_only", t.unitary_only},
              {"unitary_seed", t.unitary_seed ? json(*t.unitary_seed) : json(nullptr)},
              {"net_work_kTln2", t.net_work},
              {"extracted_work_kTln2", t.extracted_work},
              {"hmax_used", t.hmax_used},
              {"hmax_gap", t.hmax_gap},
              {"delta_slack", t.delta_slack},
              {"bound", t.bound},
              {"discretization_tolerance", t.discretization_tolerance},
              {"decoupling_distance", t.decoupling_distance},
              {"decoupling_target", t.decoupling_target},
              {"purifier_residual", t.purifier_residual},
              {"extraction_failure_probability", t.extraction_failure_probability},
              {"memory_preserved", t.memory_preserved},
              {"memory_tolerance", t.memory_tolerance},
              {"final_system_deviation", t.final_system_deviation},
              {"bound_satisfied", t.bound_satisfied},
              {"success", t.success}};
  out["net_work_joules"] = t.net_work_joules ? json(*t.net_work_joules) : json(nullptr);
  out["ledgers"] = {{"compress", to_json(t.compress_ledger)},
                    {"extract", to_json(t.extract_ledger)},
                    {"erase", to_json(t.erase_ledger)}};
  return out;
}

json to_json(const protocol::RatePoint& p) {
  return {{"copies", p.copies},
          {"hmax_rate", p.hmax_rate},
          {"ell", p.ell},
          {"ideal_rate", p.ideal_rate},
          {"simulated_rate", p.simulated_rate},
          {"method", p.method}};
}

ScenarioDocument scenario_from_json(const json& doc) {
  require_keys(doc,
               {"name", "tag", "qubits", "epsilon", "delta", "flip_probability", "schedule",
                "temperature_kelvin", "copies", "layout", "state", "amplitudes"},
               "scenario");
  if (!doc.contains("tag")) throw ParseError("scenario: missing 'tag'");
  const auto tag = get_or<std::string>(doc, "tag", "");

  protocol::ScenarioParams params;
  params.qubits = get_or(doc, "qubits", params.qubits);
  params.epsilon = get_or(doc, "epsilon", params.epsilon);
  params.delta = get_or(doc, "delta", params.delta);
  params.flip_probability = get_or(doc, "flip_probability", params.flip_probability);
  if (doc.contains("schedule")) params.schedule = schedule_from_json(doc.at("schedule"));
  if (doc.contains("temperature_kelvin")) {
    params.temperature_kelvin = get_or<double>(doc, "temperature_kelvin", 0.0);
  }

  ScenarioDocument out{protocol::build_scenario("alice", {}), kDefaultCopies};
  out.copies = get_or(doc, "copies", kDefaultCopies);
  try {
    if (tag == "custom") {
      if (!doc.contains("layout")) throw ParseError("custom scenario: missing 'layout'");
      if (doc.contains("state") == doc.contains("amplitudes")) {
        throw ParseError("custom scenario: give exactly one of 'state' or 'amplitudes'");
      }
      const auto layout = layout_from_json(doc.at("layout"));
      const auto state = doc.contains("state") ? density_from_json(doc.at("state"))
                                               : state_from_amplitudes(doc.at("amplitudes"));
      out.scenario = protocol::custom_scenario(get_or<std::string>(doc, "name", "custom"), state,
                                               layout, params);
    } else {
      for (const char* key : {"layout", "state", "amplitudes"}) {
        if (doc.contains(key)) throw ParseError(std::string("key '") + key + "' is only valid for tag 'custom'");
      }
      out.scenario = protocol::build_scenario(tag, params);
      out.scenario.name = get_or<std::string>(doc, "name", tag);
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  } catch (const AddressingError& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  return out;
}

}  // namespace negentropy::io

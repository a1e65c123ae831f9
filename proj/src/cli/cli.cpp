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

#include "negentropy/cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "negentropy/errors.hpp"
#include "negentropy/io/json.hpp"
#include "negentropy/quantum/ops.hpp"

namespace negentropy::cli {
namespace {

using io::json;

struct RunConfig {
  std::string command;
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  int samples = 64;
  std::optional<int> m;
  std::string format = "json";
  std::string output;
};

/// Raised after a complete result was produced but a bound check failed.
class BoundViolation : public Error {
 public:
  BoundViolation(const std::string& what, std::string payload)
      : Error(what), payload_(std::move(payload)) {}
  const std::string& payload() const { return payload_; }

 private:
  std::string payload_;
};

std::string number(double v) { return json(v).dump(); }

std::string csv_ledger(const thermo::WorkLedger& ledger) {
  std::ostringstream os;
  os << "step,label,dE_kTln2,occupancy,cumulative_kTln2\n";
  for (const auto& e : ledger.entries()) {
    os << e.step << ',' << e.label << ',' << number(e.delta_e) << ',' << number(e.occupancy) << ','
       << number(e.cumulative) << '\n';
  }
  return os.str();
}

io::ScenarioDocument load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed scenario JSON in '" + path + "': " + e.what());
  }
  return io::scenario_from_json(doc);
}

void require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw ParseError("command '" + cfg.command + "' is randomized and needs --seed");
}

void require_json(const RunConfig& cfg) {
  if (cfg.format != "json") throw ParseError("command '" + cfg.command + "' only supports --format json");
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

const protocol::Scenario& scenario_of(const io::ScenarioDocument& doc) { return doc.scenario; }

std::string cmd_entropy(const RunConfig& cfg, const io::ScenarioDocument& doc) {
  const auto& scn = scenario_of(doc);
  struct Row {
    std::string name;
    entropy::EntropyReport report;
  };
  std::vector<Row> rows = {
      {"vn", entropy::conditional_von_neumann(scn.global_state, scn.layout)},
      {"hmin", entropy::hmin(scn.global_state, scn.layout)},
      {"hmax", entropy::hmax(scn.global_state, scn.layout)},
  };
  if (scn.epsilon > 0.0) {
    rows.push_back({"hmax_smooth", entropy::hmax_smooth(scn.global_state, scn.layout, scn.epsilon)});
    rows.push_back({"hmin_smooth_gamma",
                    entropy::hmin_smooth_dual(scn.global_state, scn.layout, scn.epsilon)});
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "quantity,kind,method,epsilon,value,solver_gap\n";
    for (const auto& r : rows) {
      os << r.name << ',' << entropy::to_string(r.report.kind) << ','
         << entropy::to_string(r.report.method) << ',' << number(r.report.epsilon) << ','
         << number(r.report.value) << ',' << number(r.report.solver_gap) << '\n';
    }
    return os.str();
  }
  json out = {{"scenario", scn.name}};
  for (const auto& r : rows) out[r.name] = io::to_json(r.report);
  return dump(out);
}

std::string ledger_output(const RunConfig& cfg, const protocol::Scenario& scn, int qubits,
                          const thermo::ProcessResult& result) {
  if (cfg.format == "csv") return csv_ledger(result.ledger);
  json out = {{"command", cfg.command},
              {"scenario", scn.name},
              {"qubits", qubits},
              {"schedule", io::to_json(scn.schedule)},
              {"total_kTln2", result.ledger.total()},
              {"tail_bound_kTln2", result.tail_bound},
              {"final_state", io::to_json(result.system.state())},
              {"ledger", io::to_json(result.ledger)}};
  out["total_joules"] = scn.temperature_kelvin
                            ? json(thermo::to_joules(result.ledger.total(), *scn.temperature_kelvin))
                            : json(nullptr);
  return dump(out);
}

std::string cmd_erase(const RunConfig& cfg, const io::ScenarioDocument& doc) {
  const auto& scn = scenario_of(doc);
  const int n = scn.layout.qubit_count("S");
  thermo::Battery battery;
  const auto rho_s = quantum::partial_trace(scn.global_state, scn.layout.qubits("S"));
  return ledger_output(cfg, scn, n, thermo::erase(rho_s, scn.schedule, battery));
}

std::string cmd_extract(const RunConfig& cfg, const io::ScenarioDocument& doc) {
  const auto& scn = scenario_of(doc);
  const int n = scn.layout.qubit_count("S");
  thermo::Battery battery;
  return ledger_output(cfg, scn, n, thermo::extract_work_pure(n, scn.schedule, battery));
}

std::string cmd_decouple(const RunConfig& cfg, const io::ScenarioDocument& doc) {
  require_seed(cfg);
  require_json(cfg);
  const auto& scn = scenario_of(doc);
  const int n = scn.layout.qubit_count("S");
  const int m = cfg.m.value_or(n / 2);
  const auto r = decoupling::sample_decoupling(scn.global_state, scn.layout, m, cfg.samples, *cfg.seed);
  json out = io::to_json(r);
  out["scenario"] = scn.name;
  return dump(out);
}

std::string cmd_protocol(const RunConfig& cfg, const io::ScenarioDocument& doc) {
  require_seed(cfg);
  require_json(cfg);
  const auto& scn = scenario_of(doc);
  protocol::RunOptions options;
  options.samples = cfg.samples;
  options.seed = *cfg.seed;
  const auto erasure = protocol::run_erasure(scn, options);
  const auto extraction = protocol::run_extraction(scn, options);
  const std::string payload =
      dump({{"erasure", io::to_json(erasure)}, {"extraction", io::to_json(extraction)}});
  if (!erasure.bound_satisfied) {
    throw BoundViolation("erasure bound violated: net work " + number(erasure.net_work) +
                             " > hmax + Delta + tolerance = " +
                             number(erasure.bound + erasure.discretization_tolerance),
                         payload);
  }
  if (!extraction.bound_satisfied) {
    throw BoundViolation("extraction bound violated: extracted work " +
                             number(extraction.extracted_work) +
                             " < n - hmax - Delta - tolerance = " +
                             number(extraction.bound - extraction.discretization_tolerance),
                         payload);
  }
  return payload;
}

std::string cmd_aep(const RunConfig& cfg, const io::ScenarioDocument& doc) {
  const auto& scn = scenario_of(doc);
  const double target = entropy::conditional_von_neumann(scn.global_state, scn.layout).value;
  std::vector<std::pair<int, entropy::AepResult>> rows;
  for (int n : doc.copies) {
    rows.emplace_back(n, entropy::aep_rate_report(scn.global_state, scn.layout, n, scn.epsilon));
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "n,rate,target\n";
    for (const auto& [n, r] : rows) os << n << ',' << number(r.rate) << ',' << number(target) << '\n';
    return os.str();
  }
  json table = json::array();
  for (const auto& [n, r] : rows) {
    table.push_back({{"n", n},
                     {"rate", r.rate},
                     {"method", entropy::to_string(r.method)},
                     {"solver_gap", r.solver_gap}});
  }
  return dump({{"scenario", scn.name}, {"epsilon", scn.epsilon}, {"target", target}, {"rates", table}});
}

std::string cmd_rate(const RunConfig& cfg, const io::ScenarioDocument& doc) {
  const auto& scn = scenario_of(doc);
  const double target = entropy::conditional_von_neumann(scn.global_state, scn.layout).value;
  const auto points = protocol::work_cost_rate(scn, doc.copies);
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "n,hmax_rate,ell,ideal_rate,simulated_rate,target,method\n";
    for (const auto& p : points) {
      os << p.copies << ',' << number(p.hmax_rate) << ',' << p.ell << ',' << number(p.ideal_rate)
         << ',' << number(p.simulated_rate) << ',' << number(target) << ',' << p.method << '\n';
    }
    return os.str();
  }
  json table = json::array();
  for (const auto& p : points) table.push_back(io::to_json(p));
  return dump({{"scenario", scn.name}, {"epsilon", scn.epsilon}, {"target", target}, {"rates", table}});
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw ParseError("cannot open output file '" + cfg.output + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-shot erasure with quantum side information: entropies, decoupling, "
               "thermodynamic simulation and protocol checks.",
               "negentropy"};
  RunConfig cfg;
  std::uint64_t seed = 0;
  int m = 0;
  app.add_option("command", cfg.command, "entropy | erase | extract | decouple | protocol | aep | rate")
      ->required()
      ->check(CLI::IsMember({"entropy", "erase", "extract", "decouple", "protocol", "aep", "rate"}));
  app.add_option("--scenario", cfg.scenario_path, "Scenario JSON file")->required();
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized commands");
  app.add_option("--samples", cfg.samples, "Haar samples per decoupling experiment")
      ->check(CLI::PositiveNumber);
  auto* m_opt = app.add_option("--m", m, "Decoupled block size (decouple only)")
                    ->check(CLI::NonNegativeNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.output, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }
  if (seed_opt->count() > 0) cfg.seed = seed;
  if (m_opt->count() > 0) cfg.m = m;

  try {
    const auto doc = load_scenario(cfg.scenario_path);
    std::string text;
    if (cfg.command == "entropy") {
      text = cmd_entropy(cfg, doc);
    } else if (cfg.command == "erase") {
      text = cmd_erase(cfg, doc);
    } else if (cfg.command == "extract") {
      text = cmd_extract(cfg, doc);
    } else if (cfg.command == "decouple") {
      text = cmd_decouple(cfg, doc);
    } else if (cfg.command == "protocol") {
      text = cmd_protocol(cfg, doc);
    } else if (cfg.command == "aep") {
      text = cmd_aep(cfg, doc);
    } else {
      text = cmd_rate(cfg, doc);
    }
    emit(cfg, text, out);
    return kOk;
  } catch (const BoundViolation& e) {
    emit(cfg, e.payload(), out);
    err << "error: " << e.what() << "\n";
    return kBound;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kSolver;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const AddressingError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace negentropy::cli

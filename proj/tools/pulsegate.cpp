// Copyright 2026 The Pulsegate Authors
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

// pulsegate: scenario runner for the SFG pulse-gate simulator.
//
// Exit codes: 0 success, 1 I/O error, 2 configuration error,
// 3 numerical-invariant violation.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pulsegate/pulsegate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

const char* kPhaseHelp =
    "Total phase convention: delta_phi = arg(mu_2) - arg(mu_1) + (pi/2)(n_2 - n_1) with the i^n Schmidt-mode "
    "phases (convention \"imaginary_powers\"); with convention \"real\" the last term is absent.";

const char* describe(pulsegate::scenario::Command c) {
  using pulsegate::scenario::Command;
  switch (c) {
    case Command::Block: return "Block one Schmidt mode with a single-mode gate; weight table and spectra";
    case Command::Swap: return "Two matched modes (swap at theta = pi); weight table and spectra";
    case Command::Spectrum: return "Output spectrum for any gate configuration";
    case Command::PhaseSweep: return "Normalized output spectra against the total phase";
    case Command::ThetaSweep: return "Photon numbers and quadrature variances against theta";
    case Command::Twin: return "Twin-beam number-difference variances after the gate";
    case Command::Select: return "Two-gate cascade selecting one Schmidt mode";
    case Command::Jsa: return "Schmidt decomposition of the two-photon amplitude over sigma/dw";
    case Command::Oracle: return "Truncated Fock-space cross-check of the moments engine";
    case Command::Validate: return "Validate a configuration without running it";
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  namespace sc = pulsegate::scenario;
  CLI::App app{"Multimode SFG pulse gate seeded by squeezed light"};
  app.require_subcommand(1);
  app.footer(kPhaseHelp);

  std::string config_path;
  std::string out_dir = "pulsegate_out";
  std::string format = "csv";
  for (const auto& [name, cmd] : sc::command_names()) {
    auto* sub = app.add_subcommand(name, describe(cmd));
    sub->add_option("--config", config_path, "Scenario configuration (JSON)")->required();
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const auto command = sc::command_names().at(app.get_subcommands().front()->get_name());
  try {
    const std::string text = pulsegate::io::read_file(config_path);
    const sc::ScenarioConfig config = sc::parse_config_text(text);
    const sc::RunOutput result = sc::run(command, config);
    const auto fmt = format == "json" ? pulsegate::io::Format::Json : pulsegate::io::Format::Csv;
    const auto manifest = sc::write_outputs(result, config, out_dir, fmt);
    std::cout << sc::command_name(command) << ": " << manifest["files"].size() << " files in " << out_dir
              << " (config " << manifest["config_hash"].get<std::string>() << ")\n";
    if (!result.invariants.failures.empty()) {
      for (const auto& f : result.invariants.failures) std::cerr << "invariant violated: " << f << "\n";
      return kExitInvariant;
    }
    return kExitOk;
  } catch (const pulsegate::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pulsegate::io::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const pulsegate::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

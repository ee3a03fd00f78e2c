#pragma once

#include <string>

namespace thermo {

// Scenario-driven front end. Subcommands:
//   roots       exact vs expansion characteristic roots over the r-grid
//   norms       time sweep of solution / error / profile norms
//   rates       theorem-harness verdicts for the scenario's claims
//   multiplier  diffusion-wave and wave-part multiplier norm sweeps
//   profiles    profile and solution multiplier value tables
// Flags: --scenario <path> --out <path> [--threads <int>] [--seed <int>].
// Exit codes: 0 success, 1 configuration error, 2 harness failure.
int run_cli(int argc, const char* const* argv);

// Fixed-width float formatting used in every CSV cell ("%.17g"), exposed so
// tests can assert byte-identical reruns.
std::string csv_number(double v);

}  // namespace thermo

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace etrails {

// Runtime knobs shared by the CLI and the acceptance suite. Defaults come
// first, then the JSON file named by ETRAILS_CONFIG (if any), then flags.
struct RunConfig {
  int threads = 0;              // 0 resolves to the hardware concurrency
  int precision_bits = 128;
  mpq_class tolerance;          // region tolerance; defaults to 2^-64
  std::uint64_t seed = 0;
  int half_edge_budget = 24;    // brute-force guard for gadget/chain checks
  long gadget_size_cap = 2000000;  // vertex cap for synthesized gadgets
  int chain_cap = 8;            // largest d for exact chain distributions
  // Sweep-chain layer constant, calibrated by `chain calibrate` (see README);
  // consumed by the AP reduction's layer formula.
  double calibration_c = 0.19;
  // delta = eps / synth_delta_divisor in graph-gadget synthesis, calibrated.
  double synth_delta_divisor = 6.0;

  int resolved_threads() const;

  static RunConfig defaults();
  // defaults + ETRAILS_CONFIG file when the env var is set
  static RunConfig load_env();
  static RunConfig from_json_file(const std::string& path);
};

}  // namespace etrails

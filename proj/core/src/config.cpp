#include "etrails/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "etrails/mixed_map.hpp"

namespace etrails {

int RunConfig::resolved_threads() const {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

RunConfig RunConfig::defaults() {
  RunConfig c;
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 64);
  c.tolerance = mpq_class(1, den);
  c.tolerance.canonicalize();
  return c;
}

RunConfig RunConfig::load_env() {
  const char* path = std::getenv("ETRAILS_CONFIG");
  if (!path || !*path) return defaults();
  return from_json_file(path);
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  RunConfig c = defaults();
  std::ifstream in(path);
  if (!in) throw MapError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw MapError("bad config JSON in " + path + ": " + e.what());
  }
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  if (j.contains("precision_bits")) c.precision_bits = j["precision_bits"].get<int>();
  if (j.contains("tolerance")) {
    c.tolerance = mpq_class(j["tolerance"].get<std::string>());
    c.tolerance.canonicalize();
  }
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("half_edge_budget")) c.half_edge_budget = j["half_edge_budget"].get<int>();
  if (j.contains("gadget_size_cap")) c.gadget_size_cap = j["gadget_size_cap"].get<long>();
  if (j.contains("chain_cap")) c.chain_cap = j["chain_cap"].get<int>();
  if (j.contains("calibration_c")) c.calibration_c = j["calibration_c"].get<double>();
  if (j.contains("synth_delta_divisor"))
    c.synth_delta_divisor = j["synth_delta_divisor"].get<double>();
  return c;
}

}  // namespace etrails

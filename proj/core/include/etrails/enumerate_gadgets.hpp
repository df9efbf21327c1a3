#pragma once

#include <functional>

#include "etrails/signature.hpp"

namespace etrails {

struct EnumOptions {
  bool allow_loops = false;
  bool dedup = true;  // canonical-certificate isomorphism dedup
};

// Streams all connected 4-regular multigraphs on <= n vertices with 4 external
// half-edges labeled 0..3. Isomorphism fixes external labels and permutes
// vertices only.
void enumerate_gadgets(int n, const EnumOptions& opts,
                       const std::function<void(const MixedMap&)>& fn);

long long count_gadgets(int n, const EnumOptions& opts);

struct RegionScanRow {
  int vertices = 0;
  Signature sig;
  RegionClass cls = RegionClass::Inside;
  double margin = 0.0;
};

struct RegionScanReport {
  int n = 0;
  long long gadgets = 0;
  long long outside = 0;
  double min_margin = 0.0;          // most negative distance to the boundary seen
  std::vector<RegionScanRow> outside_witnesses;
  std::vector<RegionScanRow> rows;  // filled when keep_rows
};

RegionScanReport region_scan(int n, const EnumOptions& opts, const mpq_class& tol,
                             int prec_bits = 128, int threads = 1, bool keep_rows = false);

struct ClosureSampleReport {
  long long trials = 0;
  long long outside = 0;
  double min_margin = 0.0;
  std::vector<std::array<mpq_class, 3>> counterexamples;  // glue results outside S
};

// Draws random pairs in S (interior points and boundary-parametrized points),
// applies the 2-glue signature map and classifies the result.
ClosureSampleReport closure_sample(long long trials, std::uint64_t seed, const mpq_class& tol,
                                   int prec_bits = 128);

}  // namespace etrails

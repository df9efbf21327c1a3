#pragma once

#include <gmpxx.h>

#include <vector>

#include "etrails/vr.hpp"

namespace etrails {

// Exact distribution over S_d, stored as integer weights with a power-of-two
// denominator (every sweep layer halves per swap vertex).
struct PermDistribution {
  int d = 0;
  long pow2 = 0;                  // denominator = 2^pow2
  std::vector<mpz_class> weight;  // indexed by permutation rank, size d!

  mpq_class prob(int rank) const;
  bool is_uniform() const;
};

long long factorial_ll(int n);
int perm_rank(const std::vector<int>& perm);            // 0-based images
std::vector<int> perm_unrank(int d, long long rank);

// Even/odd sweeping chain on d cards started at the identity: odd layers swap
// positions (1,2),(3,4),... independently with probability 1/2, even layers
// swap (2,3),(4,5),...  Exact arithmetic.
PermDistribution chain_distribution(int d, int layers, int cap = 8);

// 1/2 * sum |p(s) - 1/d!|
mpq_class tv_to_uniform(const PermDistribution& dist);

struct MixingReport {
  int d = 0;
  int layers = 0;              // T used
  mpq_class tv;                // exact TV to uniform at T
  double tv_double = 0.0;
  mpq_class bound;             // eps/d!
  bool within_bound = false;
  int minimal_layers = -1;     // smallest T achieving the bound
  double calibrated_c = 0.0;   // minimal_layers / (d^2 log d log(d!/eps))
};

// Computes T = ceil(C d^2 log d log(d!/eps)), runs the chain, reports whether
// TV <= eps/d!, and binary-searches the minimal T achieving the bound.
MixingReport mixing_report(int d, double eps, double calibration_c, int cap = 8);

int layer_count_for(int d, double eps, double calibration_c);

// Asserts that the normalized VR table of build_shuffle_gadget(d, T) equals
// chain_distribution(d, T) key by key, exactly. Guarded by a work budget.
bool gadget_chain_check(int d, int layers, int threads = 1, int half_edge_budget = 24);

}  // namespace etrails

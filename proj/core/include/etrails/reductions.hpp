#pragma once

#include <cstdint>
#include <map>

#include "etrails/network.hpp"

namespace etrails {

// Smallest primes > lower whose product reaches product_bound (at least one
// prime), capped at max_count.
std::vector<long long> select_primes(int max_count, long long lower,
                                     const mpz_class& product_bound);

using DegreeProfile = std::map<int, int>;  // degree -> replaced-vertex count

struct ExpandResult {
  GadgetNetwork network;    // closed; components are Q-closures and plain vertices
  DegreeProfile replaced;   // degree -> count of vertices replaced by Q gadgets
  int p = 0;
};

enum class ReplaceThreshold { GreaterThan4, AtLeast4 };

// Replaces each vertex of degree above the threshold with a Q(d,p) sub-network
// whose (2j-1,2j)-th output half-edges are closed; other vertices become
// trivial components. Requires an Eulerian input with min degree >= 4 and
// p > max degree.
ExpandResult expand_to_4regular(const MixedMap& g, int p,
                                ReplaceThreshold threshold = ReplaceThreshold::GreaterThan4,
                                int threads = 1);

// Per-vertex unscaling factor ((d/2)! 2^{d/2} R_d) of the Q replacement.
mpz_class q_closure_factor(int d);

struct ResiduePair {
  mpz_class residue;
  mpz_class modulus;
};

// Divides each residue by prod_d ((d/2)! 2^{d/2} R_d)^{n_d} mod p_i and
// CRT-combines; returns the unique T below the product of the moduli.
BigCount unscale_and_crt(const std::vector<ResiduePair>& pairs, const DegreeProfile& profile);

// Theorem-style end-to-end pipeline: auto-selected primes > max degree, one
// expansion + composed count per prime, unscale, CRT.
BigCount count_et_via_crt(const MixedMap& g, ReplaceThreshold threshold, int threads = 1,
                          std::vector<long long>* primes_used = nullptr);

struct CrossingReport {
  struct Crossing {
    int edge_a = 0;  // indices into the input edge list
    int edge_b = 0;
  };
  std::vector<Crossing> crossings;
  std::uint64_t seed_used = 0;
};

struct PlanarizeResult {
  MixedMap plane_map;       // 4-regular, genus 0, rotations from the drawing
  GadgetNetwork network;    // crossing nodes as oracle components, closed
  CrossingReport report;
  int p = 0;
};

// Draws the 4-regular graph with vertices in strictly convex general position
// (random perturbation, retried on degeneracy), replaces each crossing with a
// (0,X,Y) node with parameters p and k = p, and reads the rotation system off
// the drawing. A map input of genus 0 is returned unchanged.
PlanarizeResult planarize(const MixedMap& g4, int p, std::uint64_t seed = 0);

// Replaces every vertex of a connected 4-regular graph with the 3-vertex map
// gadget; #A-trails(out) = 2^{|V|} #ET(in).
MixedMap to_atrail_instance(const MixedMap& g4);

struct ApInstance {
  MixedMap gprime;                  // closed 4-regular map
  GadgetNetwork network;            // shuffle components linked by G's edges
  mpq_class normalizer;             // R = prod_d R_d^{n_d}
  std::map<int, int> layer_counts;  // degree -> T_d
  std::map<int, int> gadget_sizes;  // degree -> D_d (choice vertices)
  int n_vertices_in = 0;
};

// Replaces each degree-d vertex by a shuffle gadget with T_d layers, outputs
// pair-closed. T_d = ceil(C d^2 log d log(4 d! n / eps)).
ApInstance ap_instance(const MixedMap& g, double eps, double calibration_c, int chain_cap = 8);

// A(G', eps/2)/R with the supplied #A-trails oracle; returns 3^n when
// eps > 2n (the trivial case).
mpq_class estimate_et(const MixedMap& g, double eps, double calibration_c,
                      const std::function<BigCount(const ApInstance&, double)>& oracle,
                      int chain_cap = 8);

// Exact #A-trails oracle backed by compose_closed on the instance network.
BigCount exact_atrails_oracle(const ApInstance& inst, int threads = 1);

}  // namespace etrails

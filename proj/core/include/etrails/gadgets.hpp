#pragma once

#include "etrails/network.hpp"

namespace etrails {

// (X,Y,Y) node: 4-regular gadget with k internal vertices whose general-mode
// VR table is (k 2^{k-1}, 2^{k-1}, 2^{k-1}) on types (01|23, 02|13, 03|12).
// Reference realization: k vertices chained by parallel edge pairs, externals
// 0,1 at one end and 2,3 at the other. Rotations describe a plane drawing with
// the externals clockwise on the outer face.
MixedMap build_xyy(int k, MapKind kind = MapKind::Graph);

// (0,X,Y) node: p copies of the (X,Y,Y) node with parameter k chained so the
// VR table is (pA(A+B)^{p-1}, ((A+B)^p-(B-A)^p)/2, ((A+B)^p+(B-A)^p)/2) with
// A = 2^{k-1}, B = k 2^{k-1}. Requires odd prime p.
MixedMap build_0xy(int p, int k, MapKind kind = MapKind::Graph);

// Crossing-replacement node: (0,X,Y) with parameters p and k = p, so mod p the
// table reduces to (0, 1, 0) and only the 0-2 / 1-3 pass-through survives.
MixedMap build_crossover(int p, MapKind kind = MapKind::Graph);

// Q gadget with d inputs IN_1..IN_d (labels 0..d-1) and d outputs OUT_1..OUT_d
// (labels d..2d-1), as a network of d(d-1)/2 (0,X,Y) components carrying their
// formula-oracle tables plus concrete realizations. Requires odd prime p > d.
GadgetNetwork build_q(int d, int p);

// Single map/graph vertex gadgets; SMG has a-trail signature (1/2,1/2,0) and
// SGG has general signature (1/3,1/3,1/3).
MixedMap build_smg();
MixedMap build_sgg();

// 3-vertex 4-regular map gadget whose a-trail VR table is (2,2,2).
MixedMap build_deg4_map_gadget();

// Layered shuffle map with d inputs (labels 0..d-1) and d outputs (labels
// d..2d-1). Odd layer t joins output pairs (2i-1,2i) of layer t-1, even layers
// join (2i,2i+1); rotations make the two previous-layer half-edges at each
// vertex non-cyclically-adjacent, so every a-trail configuration realizes a
// permutation. T = 0 degenerates to relay vertices of degree 2.
MixedMap build_shuffle_gadget(int d, int layers);

// Number of degree-4 (choice) vertices in build_shuffle_gadget(d, layers).
int shuffle_vertex_count(int d, int layers);

struct GadgetBlueprint {
  enum class Kind { Xyy, Oxy, Q, Deg4Map, Shuffle, Crossover };
  Kind kind;
  int k = 0;
  int p = 0;
  int d = 0;
  int layers = 0;
};

BigCount xyy_count_a(int k);  // 2^{k-1}
BigCount xyy_count_b(int k);  // k 2^{k-1}
mpz_class q_route_constant(int d);  // R_d = prod_{i=1}^{d-1} 2^{i(i-1)/2} i!

// Exact evaluation of the closed forms for xyy / oxy / crossover blueprints.
VRTable formula_oracle(const GadgetBlueprint& bp);

bool is_prime(long long n);

struct VerifyReport {
  std::string name;
  bool pass = false;
  std::vector<std::string> checks;  // one line per comparison
};

// Builder-vs-oracle comparison used by `gadget verify`.
VerifyReport verify_blueprint(const GadgetBlueprint& bp, int threads = 1);

}  // namespace etrails

#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>

#include "etrails/region.hpp"
#include "etrails/vr.hpp"

namespace etrails {

// Exact-rational triple over the types (01|23, 02|13, 03|12); entries are
// non-negative and sum to 1.
struct Signature {
  mpq_class alpha, beta, gamma;

  std::array<mpq_class, 3> arr() const { return {alpha, beta, gamma}; }
  bool operator==(const Signature&) const = default;
  std::string str() const;
};

Signature make_signature(const mpq_class& a, const mpq_class& b, const mpq_class& c);

// Normalized VR triple. Mode is chosen by kind: a-trail for maps, general for
// graphs. Errors on an all-zero table.
Signature signature_of(const MixedMap& gadget, int threads = 1);
Signature signature_of(const VRTable& table);

// Action of a permutation of the external labels 0..3. perm[i] is the new
// label of old label i.
MixedMap relabel_externals(const MixedMap& g, const std::array<int, 4>& perm);
Signature permute_signature(const Signature& s, const std::array<int, 4>& perm);
// Induced permutation of the three types: result[i] = new position of type i.
std::array<int, 3> type_permutation(const std::array<int, 4>& perm);
// Some label permutation realizing the given type permutation.
std::array<int, 4> label_perm_for_types(const std::array<int, 3>& type_perm);

// 2-glue: half-edges 3 and 2 of g1 are connected with half-edges 0 and 1 of
// g2; half-edges 0,1 of g1 and 2,3 of g2 are re-exported as 0,1,2,3.
MixedMap glue_build(const MixedMap& g1, const MixedMap& g2);
Signature glue_signature(const Signature& s1, const Signature& s2);
// Count-level 2-glue (same composition on unnormalized tables).
VRTable glue_tables(const VRTable& t1, const VRTable& t2);

// Replayable construction: a base gadget followed by relabel/glue steps.
// Glue partners are named sub-programs so iterated glues share one definition.
class GadgetProgram {
 public:
  static GadgetProgram start(const std::string& base);  // "SMG" or "SGG"
  void relabel(const std::array<int, 4>& perm);
  void glue(const std::string& name, std::shared_ptr<const GadgetProgram> partner);

  const Signature& sig() const { return sig_; }
  long vertex_count() const { return vertices_; }
  MixedMap build(long vertex_cap) const;
  // Recomputes the running signature from scratch; equals sig().
  Signature replay_signature() const;

  struct Step {
    enum class Op { Relabel, Glue } op;
    std::array<int, 4> perm{0, 1, 2, 3};
    std::string gadget;  // glue partner name
    Signature running;
  };
  const std::string& base() const { return base_; }
  const std::vector<Step>& steps() const { return steps_; }
  const std::map<std::string, std::shared_ptr<const GadgetProgram>>& partners() const {
    return partners_;
  }

 private:
  std::string base_;
  Signature sig_;
  long vertices_ = 0;
  std::vector<Step> steps_;
  std::map<std::string, std::shared_ptr<const GadgetProgram>> partners_;
};

struct SynthesisResult {
  MixedMap gadget;
  GadgetProgram trace;
  Signature achieved;     // exact, from glue_signature replay
  mpq_class l1_distance;  // vs the requested target
};

// Exact map-gadget synthesis for rational targets with entries in [0,1).
SynthesisResult synthesize_map_gadget(const std::array<mpq_class, 3>& target,
                                      long vertex_cap = 2000000);

struct GraphSynthOptions {
  double eps = 0.05;
  double delta_divisor = 6.0;  // delta = eps / divisor
  int prec_bits = 128;
  mpq_class tol = 0;           // region tolerance; 0 means 2^-64
  long vertex_cap = 2000000;
  bool materialize = true;     // set false to skip building the MixedMap
};

// Approximate graph-gadget synthesis for targets in S; achieves
// ||sig - target||_1 <= eps, measured by exact replay.
SynthesisResult synthesize_graph_gadget(const std::array<mpq_class, 3>& target,
                                        const GraphSynthOptions& opts);

}  // namespace etrails

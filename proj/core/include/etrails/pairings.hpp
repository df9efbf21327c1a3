#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "etrails/mixed_map.hpp"

namespace etrails {

enum class TraceMode { General, ATrail };

// One vertex's pairing: slot index -> partner slot index (an involution over
// the vertex's slots). Stored flat per vertex for cheap enumeration.
using SlotPairing = std::vector<std::pair<std::int32_t, std::int32_t>>;

// Perfect pairing of the half-edge slots at every internal vertex.
struct TransitionSystem {
  std::vector<SlotPairing> per_vertex;  // indexed by vertex; pairs are dense slot ids
};

// All pairings of the slots at vertex v. General mode yields (D-1)!! pairings
// in a fixed order; a-trail mode yields the cyclically-adjacent ones read off
// the rotation (2 for even D >= 4, 1 for D = 2).
std::vector<SlotPairing> vertex_pairings(const CompiledMap& m, int v, TraceMode mode);

// D!/(2^{D/2} (D/2)!) as a plain integer, D <= 20 or so.
long long pairing_count(int degree);

bool pairing_cyclically_adjacent(const CompiledMap& m, const SlotPairing& p);

// Streams the product set of per-vertex pairings in a deterministic order.
// `prefix_filter`, when set, receives the pairing index chosen at vertex 0 and
// may veto the branch; this is the partitioning hook for parallel consumers.
void enumerate_transition_systems(
    const CompiledMap& m, TraceMode mode, const std::function<void(const TransitionSystem&)>& fn,
    const std::function<bool(int)>& prefix_filter = nullptr);

struct Route {
  std::int32_t start_label = 0;
  std::int32_t end_label = 0;
  std::vector<HalfEdge> trail;  // dense slot ids, in traversal order
};

struct RouteDecomposition {
  std::vector<Route> routes;
  int closed_cycles = 0;
};

// Follows half-edge -> pairing -> edge-twin transitions. In a-trail mode the
// transition system is rejected (nullopt) unless every pair at every vertex is
// cyclically adjacent in the rotation; rejection is a value, not an error.
std::optional<RouteDecomposition> trace(const CompiledMap& m, const TransitionSystem& ts,
                                        TraceMode mode);

}  // namespace etrails

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace etrails {

using HalfEdge = std::int32_t;

enum class MapKind { Graph, Map };

struct Vertex {
  std::int32_t id = 0;
  std::vector<HalfEdge> rotation;  // cyclic order; for kind Graph the order carries no meaning
};

struct External {
  std::int32_t label = 0;
  HalfEdge half_edge = 0;
};

class MapError : public std::runtime_error {
 public:
  explicit MapError(const std::string& what) : std::runtime_error(what) {}
};

// Multigraph with half-edges. Every half-edge id occurs in exactly one vertex
// rotation and in exactly one edge or one external entry. External labels are
// 0..2d-1. Loops are two slots of the same rotation; multi-edges are fine.
struct MixedMap {
  MapKind kind = MapKind::Graph;
  std::vector<Vertex> vertices;
  std::vector<std::array<HalfEdge, 2>> edges;
  std::vector<External> externals;

  int n_externals() const { return static_cast<int>(externals.size()); }
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  MixedMap with_kind(MapKind k) const {
    MixedMap m = *this;
    m.kind = k;
    return m;
  }
};

// Validated, densely indexed view of a MixedMap. Half-edge slots are renumbered
// 0..H-1 in vertex order (the canonical-serialization order). All counting and
// tracing runs on this form.
struct CompiledMap {
  MapKind kind = MapKind::Graph;
  int n_vertices = 0;
  int n_half_edges = 0;  // H = 2|E| + #externals

  std::vector<std::int32_t> vertex_of;    // slot -> vertex index
  std::vector<std::int32_t> twin;         // slot -> twin slot, or -1 for externals
  std::vector<std::int32_t> ext_label;    // slot -> external label, or -1
  std::vector<std::int32_t> label_slot;   // label -> slot
  std::vector<std::int32_t> rot_offset;   // vertex -> first slot (slots of v are contiguous)
  std::vector<std::int32_t> rot_next;     // slot -> cyclic successor within its rotation
  std::vector<std::int32_t> rot_prev;     // slot -> cyclic predecessor
  std::vector<HalfEdge> orig_id;          // slot -> id in the source MixedMap
  std::vector<std::array<std::int32_t, 2>> edge_slots;

  int degree(int v) const {
    int end = (v + 1 < n_vertices) ? rot_offset[v + 1] : n_half_edges;
    return end - rot_offset[v];
  }
  int n_externals() const { return static_cast<int>(label_slot.size()); }

  bool all_degrees_even() const;
  int max_degree() const;
  // Connectivity of the underlying multigraph, ignoring externals.
  bool connected() const;
};

// Throws MapError naming the offending id if any invariant fails.
CompiledMap compile(const MixedMap& m);

// Relabels half-edges 0..2|E|+2d-1 in vertex order; vertex ids become 0..n-1.
MixedMap canonicalize(const MixedMap& m);

// JSON map format codec (see README). parse validates all invariants.
MixedMap parse_map_json(const std::string& text);
std::string serialize_map_json(const MixedMap& m);  // canonical bytes

// Degree profile d -> n_d of internal vertices.
std::vector<std::pair<int, int>> degree_profile(const MixedMap& m);

}  // namespace etrails

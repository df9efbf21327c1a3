#pragma once

#include "etrails/vr.hpp"

namespace etrails {

struct FaceStructure {
  std::vector<std::vector<std::int32_t>> faces;  // cycles of dense slots (darts)
  std::vector<std::int32_t> face_of;             // slot -> face index
  int genus = 0;
};

// Faces of a closed map via next(h) = rotation-successor of twin(h); does not
// reject positive genus. Requires a closed, connected map.
FaceStructure face_structure(const CompiledMap& m);

// Same, but errors unless V - E + F = 2.
FaceStructure trace_faces(const MixedMap& m);

struct MultiGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // loops and multi-edges allowed
};

// Base graph of the checkerboard decomposition: one vertex per black face,
// one edge per 4-valent map vertex joining the two black corners there. The
// face containing the lowest-numbered half-edge is deemed outer and colored
// white; `swap_colors` builds the white-face graph (the planar dual) instead.
struct PlanarDemedial {
  MultiGraph base;
  std::vector<std::int32_t> face_color;   // face -> 0 white, 1 black
  std::vector<std::int32_t> face_vertex;  // face -> base-graph vertex or -1
};

PlanarDemedial checkerboard_demedialize(const MixedMap& m, bool swap_colors = false);

// Kirchhoff via fraction-free elimination of a Laplacian minor; exact.
// Loops are dropped; disconnected graphs count 0.
BigCount spanning_tree_count(const MultiGraph& g);

// #A-trails of a 4-regular plane map in polynomial time.
BigCount count_atrails_plane(const MixedMap& m);

}  // namespace etrails

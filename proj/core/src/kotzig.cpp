#include "etrails/kotzig.hpp"

#include <algorithm>
#include <queue>

namespace etrails {

FaceStructure face_structure(const CompiledMap& m) {
  if (m.kind != MapKind::Map) throw MapError("face tracing requires kind = map");
  if (m.n_externals() != 0) throw MapError("face tracing requires a closed map");
  if (!m.connected()) throw MapError("face tracing requires a connected map");
  FaceStructure fs;
  fs.face_of.assign(m.n_half_edges, -1);
  for (int s = 0; s < m.n_half_edges; ++s) {
    if (fs.face_of[s] != -1) continue;
    int f = static_cast<int>(fs.faces.size());
    fs.faces.emplace_back();
    int cur = s;
    do {
      fs.face_of[cur] = f;
      fs.faces[f].push_back(cur);
      cur = m.rot_next[m.twin[cur]];
    } while (cur != s);
  }
  int euler = m.n_vertices - static_cast<int>(m.edge_slots.size()) +
              static_cast<int>(fs.faces.size());
  fs.genus = (2 - euler) / 2;
  return fs;
}

FaceStructure trace_faces(const MixedMap& m) {
  CompiledMap c = compile(m);
  FaceStructure fs = face_structure(c);
  if (fs.genus != 0)
    throw MapError("rotation system is not plane: genus " + std::to_string(fs.genus));
  return fs;
}

PlanarDemedial checkerboard_demedialize(const MixedMap& mm, bool swap_colors) {
  CompiledMap m = compile(mm);
  for (int v = 0; v < m.n_vertices; ++v)
    if (m.degree(v) != 4)
      throw MapError("checkerboard coloring requires a 4-regular map (vertex " +
                     std::to_string(v) + " has degree " + std::to_string(m.degree(v)) + ")");
  FaceStructure fs = face_structure(m);
  if (fs.genus != 0) throw MapError("checkerboard coloring requires a plane map");

  int n_faces = static_cast<int>(fs.faces.size());
  PlanarDemedial out;
  out.face_color.assign(n_faces, -1);
  // outer face: the one containing the lowest-numbered half-edge
  int outer = fs.face_of[0];
  int white = swap_colors ? 1 : 0;
  out.face_color[outer] = white;
  std::queue<int> bfs;
  bfs.push(outer);
  while (!bfs.empty()) {
    int f = bfs.front();
    bfs.pop();
    for (int dart : fs.faces[f]) {
      int g = fs.face_of[m.twin[dart]];
      if (out.face_color[g] == -1) {
        out.face_color[g] = 1 - out.face_color[f];
        bfs.push(g);
      } else if (out.face_color[g] == out.face_color[f]) {
        throw MapError("face 2-coloring failed; input is not a 4-regular plane map");
      }
    }
  }
  for (int f = 0; f < n_faces; ++f)
    if (out.face_color[f] == -1) throw MapError("face 2-coloring failed: unreachable face");

  out.face_vertex.assign(n_faces, -1);
  int nb = 0;
  for (int f = 0; f < n_faces; ++f)
    if (out.face_color[f] == 1) out.face_vertex[f] = nb++;
  out.base.n = nb;
  // one base edge per map vertex, joining the two black corners; the corner
  // between rotation slots s_i, s_{i+1} lies in the face of dart s_{i+1}
  for (int v = 0; v < m.n_vertices; ++v) {
    int begin = m.rot_offset[v];
    std::array<int, 4> corner_face;
    for (int i = 0; i < 4; ++i) corner_face[i] = fs.face_of[m.rot_next[begin + i]];
    std::vector<int> black;
    for (int i = 0; i < 4; ++i)
      if (out.face_color[corner_face[i]] == 1) black.push_back(corner_face[i]);
    if (black.size() != 2)
      throw MapError("corner coloring did not alternate at vertex " + std::to_string(v));
    out.base.edges.push_back({out.face_vertex[black[0]], out.face_vertex[black[1]]});
  }
  return out;
}

BigCount spanning_tree_count(const MultiGraph& g) {
  if (g.n <= 0) return 1;
  if (g.n == 1) return 1;
  int m = g.n - 1;
  std::vector<std::vector<mpz_class>> a(m, std::vector<mpz_class>(m, mpz_class(0)));
  for (const auto& [u, v] : g.edges) {
    if (u == v) continue;  // loops never lie in trees
    if (u < m) a[u][u] += 1;
    if (v < m) a[v][v] += 1;
    if (u < m && v < m) {
      a[u][v] -= 1;
      a[v][u] -= 1;
    }
  }
  // Bareiss fraction-free elimination; divisions are exact
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < m - 1; ++k) {
    if (a[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < m; ++i)
        if (a[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv == -1) return 0;  // singular: disconnected
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < m; ++j) {
        mpz_class num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  mpz_class det = a[m - 1][m - 1] * sign;
  if (det < 0) throw MapError("spanning_tree_count: negative determinant (bug)");
  return det;
}

BigCount count_atrails_plane(const MixedMap& m) {
  PlanarDemedial dem = checkerboard_demedialize(m);
  return spanning_tree_count(dem.base);
}

}  // namespace etrails

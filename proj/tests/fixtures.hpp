#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "etrails/mixed_map.hpp"

namespace etrails::fixtures {

// 2 vertices joined by 4 parallel edges.
inline MixedMap dipole4(MapKind kind = MapKind::Graph) {
  MixedMap m;
  m.kind = kind;
  m.vertices.push_back({0, {0, 1, 2, 3}});
  m.vertices.push_back({1, {4, 5, 6, 7}});
  m.edges = {{0, 4}, {1, 5}, {2, 6}, {3, 7}};
  return m;
}

// plane 4-dipole: rotations (a,b,c,d) and (a,d,c,b)
inline MixedMap dipole4_plane() {
  MixedMap m;
  m.kind = MapKind::Map;
  m.vertices.push_back({0, {0, 1, 2, 3}});
  m.vertices.push_back({1, {4, 7, 6, 5}});
  m.edges = {{0, 4}, {1, 5}, {2, 6}, {3, 7}};
  return m;
}

// toroidal rotation: both vertices (a,b,c,d)
inline MixedMap dipole4_torus() { return dipole4(MapKind::Map); }

// 2 vertices, 6 parallel edges
inline MixedMap dipole6() {
  MixedMap m;
  m.kind = MapKind::Graph;
  m.vertices.push_back({0, {0, 1, 2, 3, 4, 5}});
  m.vertices.push_back({1, {6, 7, 8, 9, 10, 11}});
  for (int i = 0; i < 6; ++i) m.edges.push_back({i, 6 + i});
  return m;
}

inline MixedMap cycle(int n, MapKind kind = MapKind::Map) {
  MixedMap m;
  m.kind = kind;
  for (int i = 0; i < n; ++i) m.vertices.push_back({i, {2 * i, 2 * i + 1}});
  for (int i = 0; i < n; ++i) m.edges.push_back({2 * i + 1, (2 * i + 2) % (2 * n)});
  return m;
}

// cycle C_n with every edge doubled; as a map this is the medial of C_n:
// at each vertex, clockwise (outer_next, inner_next, inner_prev, outer_prev)
inline MixedMap doubled_cycle(int n, MapKind kind = MapKind::Graph) {
  MixedMap m;
  m.kind = kind;
  // half-edges of vertex i: 4i + {0: outer_next, 1: inner_next, 2: inner_prev, 3: outer_prev}
  for (int i = 0; i < n; ++i) m.vertices.push_back({i, {4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3}});
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    m.edges.push_back({4 * i, 4 * j + 3});      // outer arc
    m.edges.push_back({4 * i + 1, 4 * j + 2});  // inner arc
  }
  return m;
}

// K5 with vertex i's rotation listing neighbors in increasing order
inline MixedMap k5(MapKind kind = MapKind::Graph) {
  MixedMap m;
  m.kind = kind;
  int next = 0;
  std::vector<std::vector<HalfEdge>> rot(5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      rot[i].push_back(next);
      rot[j].push_back(next + 1);
      m.edges.push_back({next, next + 1});
      next += 2;
    }
  for (int i = 0; i < 5; ++i) m.vertices.push_back({i, rot[i]});
  return m;
}

// K5 plus a doubled 0-1 edge: degrees (6,6,4,4,4)
inline MixedMap k5_plus_double_edge() {
  MixedMap m = k5();
  int next = 2 * m.n_edges();
  m.vertices[0].rotation.push_back(next);
  m.vertices[1].rotation.push_back(next + 1);
  m.edges.push_back({next, next + 1});
  m.vertices[0].rotation.push_back(next + 2);
  m.vertices[1].rotation.push_back(next + 3);
  m.edges.push_back({next + 2, next + 3});
  return m;
}

// one vertex with two nested loops: rotation (a1, b1, b2, a2)
inline MixedMap rose2() {
  MixedMap m;
  m.kind = MapKind::Map;
  m.vertices.push_back({0, {0, 1, 2, 3}});
  m.edges = {{0, 3}, {1, 2}};
  return m;
}

// plane map from explicit coordinates: rotations are the clockwise order of
// the neighbor directions (ties impossible for the fixtures below)
inline MixedMap plane_map_from_coords(const std::vector<std::pair<double, double>>& xy,
                                      const std::vector<std::pair<int, int>>& edges) {
  int n = static_cast<int>(xy.size());
  std::vector<std::vector<std::pair<double, int>>> inc(n);  // (angle, half-edge)
  MixedMap m;
  m.kind = MapKind::Map;
  int next = 0;
  for (const auto& [u, v] : edges) {
    double au = std::atan2(xy[v].second - xy[u].second, xy[v].first - xy[u].first);
    double av = std::atan2(xy[u].second - xy[v].second, xy[u].first - xy[v].first);
    inc[u].push_back({au, next});
    inc[v].push_back({av, next + 1});
    m.edges.push_back({next, next + 1});
    next += 2;
  }
  for (int i = 0; i < n; ++i) {
    std::sort(inc[i].begin(), inc[i].end());
    std::reverse(inc[i].begin(), inc[i].end());  // clockwise
    Vertex v;
    v.id = i;
    for (const auto& [a, h] : inc[i]) v.rotation.push_back(h);
    m.vertices.push_back(std::move(v));
  }
  return m;
}

// octahedron drawn as two nested triangles
inline MixedMap octahedron_map() {
  std::vector<std::pair<double, double>> xy = {
      {0.0, 2.0}, {-2.0, -1.5}, {2.0, -1.5},    // outer A,B,C
      {0.0, -0.8}, {0.7, 0.4}, {-0.7, 0.4}};    // inner D,E,F
  std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3},
                                            {0, 4}, {0, 5}, {1, 5}, {1, 3}, {2, 3}, {2, 4}};
  return plane_map_from_coords(xy, edges);
}

// square antiprism: outer square + rotated inner square
inline MixedMap antiprism_map() {
  std::vector<std::pair<double, double>> xy;
  for (int i = 0; i < 4; ++i) {
    double a = 3.14159265358979 * (0.25 + i * 0.5);
    xy.push_back({2.0 * std::cos(a), 2.0 * std::sin(a)});
  }
  for (int i = 0; i < 4; ++i) {
    double a = 3.14159265358979 * (0.5 + i * 0.5);
    xy.push_back({1.0 * std::cos(a), 1.0 * std::sin(a)});
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 4; ++i) {
    edges.push_back({i, (i + 1) % 4});
    edges.push_back({4 + i, 4 + (i + 1) % 4});
    edges.push_back({i, 4 + i});
    edges.push_back({(i + 1) % 4, 4 + i});
  }
  return plane_map_from_coords(xy, edges);
}

// random connected gadget with 4 externals on n vertices (uniform-ish slot
// pairing, resampled until connected); kind decides graph vs map semantics
inline MixedMap random_gadget(int n, MapKind kind, std::mt19937_64& rng) {
  for (;;) {
    int slots = 4 * n;
    std::vector<int> perm(slots);
    for (int i = 0; i < slots; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    // first 4 slots (in shuffled order) take the external labels; the rest pair up
    MixedMap m;
    m.kind = kind;
    for (int v = 0; v < n; ++v) {
      Vertex vert;
      vert.id = v;
      for (int s = 0; s < 4; ++s) vert.rotation.push_back(4 * v + s);
      m.vertices.push_back(vert);
    }
    for (int l = 0; l < 4; ++l) m.externals.push_back({l, perm[l]});
    for (int i = 4; i + 1 < slots; i += 2) m.edges.push_back({perm[i], perm[i + 1]});
    CompiledMap c = compile(m);
    if (c.connected()) return m;
  }
}

}  // namespace etrails::fixtures

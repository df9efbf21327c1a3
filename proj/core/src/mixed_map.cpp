#include "etrails/mixed_map.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include <json.hpp>

namespace etrails {

bool CompiledMap::all_degrees_even() const {
  for (int v = 0; v < n_vertices; ++v)
    if (degree(v) % 2 != 0) return false;
  return true;
}

int CompiledMap::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_vertices; ++v) d = std::max(d, degree(v));
  return d;
}

bool CompiledMap::connected() const {
  if (n_vertices == 0) return true;
  std::vector<char> seen(n_vertices, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    int end = (v + 1 < n_vertices) ? rot_offset[v + 1] : n_half_edges;
    for (int s = rot_offset[v]; s < end; ++s) {
      int t = twin[s];
      if (t < 0) continue;
      int u = vertex_of[t];
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n_vertices;
}

CompiledMap compile(const MixedMap& m) {
  CompiledMap c;
  c.kind = m.kind;
  c.n_vertices = m.n_vertices();

  std::unordered_map<HalfEdge, int> slot_of;
  int slot = 0;
  c.rot_offset.reserve(c.n_vertices);
  for (const Vertex& v : m.vertices) {
    c.rot_offset.push_back(slot);
    for (HalfEdge h : v.rotation) {
      if (h < 0) throw MapError("negative half-edge id " + std::to_string(h));
      if (!slot_of.emplace(h, slot).second)
        throw MapError("half-edge reused: id " + std::to_string(h) +
                       " occurs in more than one rotation slot");
      c.orig_id.push_back(h);
      c.vertex_of.push_back(static_cast<int>(&v - m.vertices.data()));
      ++slot;
    }
  }
  c.n_half_edges = slot;

  c.rot_next.assign(slot, -1);
  c.rot_prev.assign(slot, -1);
  for (int v = 0; v < c.n_vertices; ++v) {
    int begin = c.rot_offset[v];
    int end = (v + 1 < c.n_vertices) ? c.rot_offset[v + 1] : slot;
    for (int s = begin; s < end; ++s) {
      int nxt = (s + 1 < end) ? s + 1 : begin;
      c.rot_next[s] = nxt;
      c.rot_prev[nxt] = s;
    }
  }

  c.twin.assign(slot, -1);
  c.ext_label.assign(slot, -1);
  std::vector<char> used(slot, 0);

  auto lookup = [&](HalfEdge h, const char* where) {
    auto it = slot_of.find(h);
    if (it == slot_of.end())
      throw MapError(std::string("dangling half-edge id ") + std::to_string(h) + " in " + where);
    return it->second;
  };

  c.edge_slots.reserve(m.edges.size());
  for (const auto& e : m.edges) {
    int a = lookup(e[0], "edge");
    int b = lookup(e[1], "edge");
    if (a == b) throw MapError("edge pairs half-edge " + std::to_string(e[0]) + " with itself");
    if (used[a]) throw MapError("half-edge reused: id " + std::to_string(e[0]));
    if (used[b]) throw MapError("half-edge reused: id " + std::to_string(e[1]));
    used[a] = used[b] = 1;
    c.twin[a] = b;
    c.twin[b] = a;
    c.edge_slots.push_back({a, b});
  }

  std::vector<int> by_label;
  for (const External& x : m.externals) {
    int s = lookup(x.half_edge, "external");
    if (used[s]) throw MapError("half-edge reused: id " + std::to_string(x.half_edge));
    used[s] = 1;
    if (x.label < 0) throw MapError("negative external label " + std::to_string(x.label));
    if (x.label >= static_cast<int>(m.externals.size()))
      throw MapError("external labels must be 0..2d-1, got " + std::to_string(x.label));
    if (static_cast<int>(by_label.size()) <= x.label) by_label.resize(x.label + 1, -1);
    if (by_label[x.label] != -1)
      throw MapError("duplicate external label " + std::to_string(x.label));
    by_label[x.label] = s;
    c.ext_label[s] = x.label;
  }
  if (m.externals.size() % 2 != 0)
    throw MapError("number of externals must be even, got " + std::to_string(m.externals.size()));
  for (int s = 0; s < slot; ++s)
    if (!used[s])
      throw MapError("dangling half-edge id " + std::to_string(c.orig_id[s]) +
                     ": present in a rotation but in no edge or external");
  c.label_slot = std::move(by_label);
  return c;
}

MixedMap canonicalize(const MixedMap& m) {
  CompiledMap c = compile(m);
  MixedMap out;
  out.kind = m.kind;
  out.vertices.resize(m.vertices.size());
  int slot = 0;
  for (int v = 0; v < c.n_vertices; ++v) {
    out.vertices[v].id = v;
    int end = (v + 1 < c.n_vertices) ? c.rot_offset[v + 1] : c.n_half_edges;
    for (int s = c.rot_offset[v]; s < end; ++s) out.vertices[v].rotation.push_back(slot++);
  }
  // slots are already in vertex order, so the dense slot index is the new id
  for (const auto& e : c.edge_slots) out.edges.push_back({e[0], e[1]});
  for (int label = 0; label < c.n_externals(); ++label)
    out.externals.push_back({label, c.label_slot[label]});
  return out;
}

namespace {

using nlohmann::json;

}  // namespace

MixedMap parse_map_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw MapError(std::string("bad JSON: ") + e.what());
  }
  MixedMap m;
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "map")
      m.kind = MapKind::Map;
    else if (kind == "graph")
      m.kind = MapKind::Graph;
    else
      throw MapError("kind must be \"map\" or \"graph\", got \"" + kind + "\"");
    for (const auto& jv : j.at("vertices")) {
      Vertex v;
      v.id = jv.at("id").get<std::int32_t>();
      for (const auto& h : jv.at("rotation")) v.rotation.push_back(h.get<HalfEdge>());
      m.vertices.push_back(std::move(v));
    }
    for (const auto& je : j.at("edges")) {
      if (je.size() != 2) throw MapError("edge entries must be pairs");
      m.edges.push_back({je[0].get<HalfEdge>(), je[1].get<HalfEdge>()});
    }
    if (j.contains("externals"))
      for (const auto& jx : j.at("externals"))
        m.externals.push_back(
            {jx.at("label").get<std::int32_t>(), jx.at("half_edge").get<HalfEdge>()});
  } catch (const json::exception& e) {
    throw MapError(std::string("bad map JSON: ") + e.what());
  }
  compile(m);  // enforce invariants on parse
  return m;
}

std::string serialize_map_json(const MixedMap& m) {
  MixedMap c = canonicalize(m);
  json j;
  j["kind"] = (c.kind == MapKind::Map) ? "map" : "graph";
  j["vertices"] = json::array();
  for (const Vertex& v : c.vertices) {
    json jv;
    jv["id"] = v.id;
    jv["rotation"] = v.rotation;
    j["vertices"].push_back(jv);
  }
  j["edges"] = json::array();
  for (const auto& e : c.edges) j["edges"].push_back({e[0], e[1]});
  j["externals"] = json::array();
  for (const External& x : c.externals) {
    json jx;
    jx["label"] = x.label;
    jx["half_edge"] = x.half_edge;
    j["externals"].push_back(jx);
  }
  return j.dump();
}

std::vector<std::pair<int, int>> degree_profile(const MixedMap& m) {
  CompiledMap c = compile(m);
  std::map<int, int> prof;
  for (int v = 0; v < c.n_vertices; ++v) prof[c.degree(v)]++;
  return {prof.begin(), prof.end()};
}

}  // namespace etrails

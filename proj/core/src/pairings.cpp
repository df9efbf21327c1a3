#include "etrails/pairings.hpp"

#include <algorithm>

namespace etrails {

long long pairing_count(int degree) {
  if (degree % 2 != 0 || degree < 0) return 0;
  long long r = 1;
  for (int k = degree - 1; k > 1; k -= 2) r *= k;  // (D-1)!!
  return r;
}

namespace {

void gen_pairings(std::vector<int>& slots, SlotPairing& acc,
                  std::vector<SlotPairing>& out) {
  if (slots.empty()) {
    out.push_back(acc);
    return;
  }
  int first = slots[0];
  for (std::size_t i = 1; i < slots.size(); ++i) {
    int partner = slots[i];
    std::vector<int> rest;
    rest.reserve(slots.size() - 2);
    for (std::size_t k = 1; k < slots.size(); ++k)
      if (k != i) rest.push_back(slots[k]);
    acc.push_back({first, partner});
    gen_pairings(rest, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<SlotPairing> vertex_pairings(const CompiledMap& m, int v, TraceMode mode) {
  int begin = m.rot_offset[v];
  int deg = m.degree(v);
  if (deg % 2 != 0)
    throw MapError("odd-degree vertex " + std::to_string(v) + " (degree " + std::to_string(deg) +
                   ")");
  std::vector<SlotPairing> out;
  if (deg == 0) {
    out.push_back({});
    return out;
  }
  if (mode == TraceMode::ATrail) {
    // perfect matchings of the rotation cycle: slots (r0 r1)(r2 r3)... and the
    // shifted one; they coincide at degree 2
    SlotPairing a, b;
    for (int i = 0; i < deg; i += 2) a.push_back({begin + i, begin + i + 1});
    out.push_back(a);
    if (deg > 2) {
      for (int i = 1; i < deg; i += 2) b.push_back({begin + i, begin + (i + 1) % deg});
      out.push_back(b);
    }
    return out;
  }
  std::vector<int> slots(deg);
  for (int i = 0; i < deg; ++i) slots[i] = begin + i;
  SlotPairing acc;
  gen_pairings(slots, acc, out);
  return out;
}

bool pairing_cyclically_adjacent(const CompiledMap& m, const SlotPairing& p) {
  for (const auto& [a, b] : p) {
    if (m.rot_next[a] != b && m.rot_next[b] != a) return false;
  }
  return true;
}

void enumerate_transition_systems(const CompiledMap& m, TraceMode mode,
                                  const std::function<void(const TransitionSystem&)>& fn,
                                  const std::function<bool(int)>& prefix_filter) {
  if (!m.all_degrees_even()) throw MapError("odd-degree vertex: transition systems undefined");
  int n = m.n_vertices;
  std::vector<std::vector<SlotPairing>> choices(n);
  for (int v = 0; v < n; ++v) choices[v] = vertex_pairings(m, v, mode);

  TransitionSystem ts;
  ts.per_vertex.resize(n);
  // iterative odometer, vertex 0 outermost so prefix partitioning is cheap
  std::vector<int> idx(n, 0);
  if (n == 0) {
    fn(ts);
    return;
  }
  for (;;) {
    bool skip = prefix_filter && !prefix_filter(idx[0]);
    if (!skip) {
      for (int v = 0; v < n; ++v) ts.per_vertex[v] = choices[v][idx[v]];
      fn(ts);
    }
    int v = skip ? 0 : n - 1;
    for (; v >= 0; --v) {
      if (++idx[v] < static_cast<int>(choices[v].size())) break;
      idx[v] = 0;
    }
    if (v < 0) break;
    if (skip) continue;
    for (int u = v + 1; u < n; ++u) idx[u] = 0;
  }
}

std::optional<RouteDecomposition> trace(const CompiledMap& m, const TransitionSystem& ts,
                                        TraceMode mode) {
  if (static_cast<int>(ts.per_vertex.size()) != m.n_vertices)
    throw MapError("transition system does not cover every vertex");
  if (mode == TraceMode::ATrail && m.kind != MapKind::Map)
    throw MapError("a-trail tracing requires kind = map");

  std::vector<std::int32_t> partner(m.n_half_edges, -1);
  for (int v = 0; v < m.n_vertices; ++v) {
    for (const auto& [a, b] : ts.per_vertex[v]) {
      if (a < 0 || b < 0 || a >= m.n_half_edges || b >= m.n_half_edges ||
          m.vertex_of[a] != v || m.vertex_of[b] != v || partner[a] != -1 || partner[b] != -1)
        throw MapError("malformed pairing at vertex " + std::to_string(v));
      partner[a] = b;
      partner[b] = a;
    }
    if (mode == TraceMode::ATrail && !pairing_cyclically_adjacent(m, ts.per_vertex[v]))
      return std::nullopt;
  }
  for (int s = 0; s < m.n_half_edges; ++s)
    if (partner[s] == -1) throw MapError("pairing misses slot " + std::to_string(s));

  RouteDecomposition out;
  std::vector<char> seen(m.n_half_edges, 0);
  // routes first: start from each external once
  for (int label = 0; label < m.n_externals(); ++label) {
    int s = m.label_slot[label];
    if (seen[s]) continue;
    Route r;
    r.start_label = label;
    int cur = s;
    for (;;) {
      seen[cur] = 1;
      r.trail.push_back(cur);
      int out_slot = partner[cur];
      seen[out_slot] = 1;
      r.trail.push_back(out_slot);
      if (m.ext_label[out_slot] >= 0) {
        r.end_label = m.ext_label[out_slot];
        break;
      }
      cur = m.twin[out_slot];
    }
    out.routes.push_back(std::move(r));
  }
  // remaining slots belong to closed cycles
  for (int s = 0; s < m.n_half_edges; ++s) {
    if (seen[s]) continue;
    int cur = s;
    do {
      seen[cur] = 1;
      int p = partner[cur];
      seen[p] = 1;
      cur = m.twin[p];
    } while (cur != s);
    out.closed_cycles++;
  }
  return out;
}

}  // namespace etrails

#include "etrails/network.hpp"

#include <algorithm>
#include <future>

namespace etrails {

void GadgetNetwork::check() const {
  std::vector<std::vector<char>> used(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    const VRTable& t = components[c].table;
    if (t.n_labels <= 0 || t.n_labels % 2 != 0)
      throw MapError("component " + std::to_string(c) + " has invalid label count");
    used[c].assign(t.n_labels, 0);
  }
  auto touch = [&](const PortRef& p) {
    if (p.component < 0 || p.component >= static_cast<int>(components.size()))
      throw MapError("port references missing component " + std::to_string(p.component));
    if (p.label < 0 || p.label >= components[p.component].table.n_labels)
      throw MapError("port references missing label " + std::to_string(p.label));
    if (used[p.component][p.label]++)
      throw MapError("component label linked twice: (" + std::to_string(p.component) + "," +
                     std::to_string(p.label) + ")");
  };
  for (const auto& [a, b] : links) {
    touch(a);
    touch(b);
  }
  for (const auto& p : externals) touch(p);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (int l = 0; l < components[c].table.n_labels; ++l)
      if (!used[c][l])
        throw MapError("component label neither linked nor exported: (" + std::to_string(c) +
                       "," + std::to_string(l) + ")");
}

namespace {

// Dense port model of a network: ports are (component, label) flattened; the
// `wire` involution encodes links (or external endpoints as -1-label), the
// per-assignment `match` involution encodes the chosen route types.
struct PortSpace {
  std::vector<int> offset;          // component -> first port
  int n_ports = 0;
  std::vector<int> wire;            // port -> linked port, or -1
  std::vector<int> ext_label;       // port -> network label, or -1
  std::vector<int> ext_ports;       // network label -> port
  std::vector<std::vector<const RouteType*>> keys;   // component -> table keys
  std::vector<std::vector<const BigCount*>> weights; // component -> counts

  explicit PortSpace(const GadgetNetwork& net) {
    net.check();
    int n = static_cast<int>(net.components.size());
    offset.resize(n);
    int p = 0;
    for (int c = 0; c < n; ++c) {
      offset[c] = p;
      p += net.components[c].table.n_labels;
    }
    n_ports = p;
    wire.assign(p, -1);
    ext_label.assign(p, -1);
    for (const auto& [a, b] : net.links) {
      int pa = offset[a.component] + a.label;
      int pb = offset[b.component] + b.label;
      wire[pa] = pb;
      wire[pb] = pa;
    }
    ext_ports.resize(net.externals.size());
    for (std::size_t l = 0; l < net.externals.size(); ++l) {
      int port = offset[net.externals[l].component] + net.externals[l].label;
      ext_label[port] = static_cast<int>(l);
      ext_ports[l] = port;
    }
    keys.resize(n);
    weights.resize(n);
    for (int c = 0; c < n; ++c) {
      for (const auto& [k, v] : net.components[c].table.counts) {
        if (sgn(v) == 0) continue;
        keys[c].push_back(&k);
        weights[c].push_back(&v);
      }
      if (keys[c].empty())
        throw MapError("component " + std::to_string(c) + " has an all-zero table");
    }
  }
};

// Walks the match/wire involutions for one full assignment. Returns false on
// any closed cycle through the links (open networks) or counts cycles.
struct AssignmentTrace {
  const PortSpace& ps;
  std::vector<int> match;
  std::vector<char> seen;

  explicit AssignmentTrace(const PortSpace& p) : ps(p), match(p.n_ports, -1), seen(p.n_ports, 0) {}

  void set_component(int c, const RouteType& key) {
    for (const auto& [a, b] : key.pairs) {
      match[ps.offset[c] + a] = ps.offset[c] + b;
      match[ps.offset[c] + b] = ps.offset[c] + a;
    }
  }

  // routes_out: network-label matching; returns cycle count
  int run(std::vector<std::pair<std::int32_t, std::int32_t>>* routes_out) {
    std::fill(seen.begin(), seen.end(), 0);
    if (routes_out) routes_out->clear();
    for (int port : ps.ext_ports) {
      if (seen[port]) continue;
      int cur = port;
      for (;;) {
        seen[cur] = 1;
        int m = match[cur];
        seen[m] = 1;
        if (ps.ext_label[m] >= 0) {
          if (routes_out)
            routes_out->push_back({ps.ext_label[port], ps.ext_label[m]});
          break;
        }
        cur = ps.wire[m];
      }
    }
    int cycles = 0;
    for (int s = 0; s < ps.n_ports; ++s) {
      if (seen[s]) continue;
      int cur = s;
      do {
        seen[cur] = 1;
        int m = match[cur];
        seen[m] = 1;
        cur = ps.wire[m];
      } while (cur != s);
      ++cycles;
    }
    return cycles;
  }
};

template <typename Leaf>
void enumerate_assignments(const PortSpace& ps, int threads, const Leaf& leaf_factory) {
  int n = static_cast<int>(ps.keys.size());
  auto body = [&](int tid, int stride) {
    auto leaf = leaf_factory(tid);
    AssignmentTrace tr(ps);
    std::vector<BigCount> prod(n + 1);
    prod[0] = 1;
    std::vector<int> idx(n, 0);
    std::function<void(int)> rec = [&](int c) {
      if (c == n) {
        leaf(tr, prod[n]);
        return;
      }
      int k = static_cast<int>(ps.keys[c].size());
      for (int i = 0; i < k; ++i) {
        if (c == 0 && stride > 1 && i % stride != tid) continue;
        tr.set_component(c, *ps.keys[c][i]);
        prod[c + 1] = prod[c] * *ps.weights[c][i];
        rec(c + 1);
      }
    };
    rec(0);
  };
  threads = std::max(1, threads);
  if (threads == 1 || n == 0) {
    body(0, 1);
    return;
  }
  std::vector<std::future<void>> futs;
  for (int t = 0; t < threads; ++t)
    futs.push_back(std::async(std::launch::async, [&, t] { body(t, threads); }));
  for (auto& f : futs) f.get();
}

}  // namespace

VRTable compose_vr(const GadgetNetwork& net, int threads) {
  PortSpace ps(net);
  if (net.externals.empty())
    throw MapError("compose_vr needs network externals; use compose_closed for closed networks");
  threads = std::max(1, threads);
  std::vector<std::map<RouteType, BigCount>> partial(threads);
  enumerate_assignments(ps, threads, [&](int tid) {
    return [&partial, tid](AssignmentTrace& tr, const BigCount& w) {
      std::vector<std::pair<std::int32_t, std::int32_t>> routes;
      if (tr.run(&routes) != 0) return;
      partial[tid][RouteType::of(std::move(routes))] += w;
    };
  });
  VRTable out;
  // every component table shares one mode in practice; report the first
  out.mode = net.components.empty() ? TraceMode::General : net.components[0].table.mode;
  out.n_labels = static_cast<int>(net.externals.size());
  for (auto& p : partial)
    for (auto& [k, v] : p) out.counts[k] += v;
  return out;
}

BigCount compose_closed(const GadgetNetwork& net, int threads) {
  PortSpace ps(net);
  if (!net.externals.empty()) throw MapError("compose_closed requires a closed network");
  threads = std::max(1, threads);
  std::vector<BigCount> partial(threads, BigCount(0));
  enumerate_assignments(ps, threads, [&](int tid) {
    return [&partial, tid](AssignmentTrace& tr, const BigCount& w) {
      if (tr.run(nullptr) == 1) partial[tid] += w;
    };
  });
  BigCount total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

MixedMap flatten(const GadgetNetwork& net) {
  net.check();
  MixedMap out;
  bool all_maps = true;
  std::vector<int> he_base(net.components.size());
  std::vector<int> v_base(net.components.size());
  int he = 0, nv = 0;
  std::vector<std::vector<HalfEdge>> ext_he(net.components.size());
  for (std::size_t c = 0; c < net.components.size(); ++c) {
    if (!net.components[c].realization)
      throw MapError("flatten: component " + std::to_string(c) + " has no realization");
    MixedMap g = canonicalize(*net.components[c].realization);
    if (g.kind != MapKind::Map) all_maps = false;
    if (g.n_externals() != net.components[c].table.n_labels)
      throw MapError("flatten: realization/table label mismatch at component " +
                     std::to_string(c));
    he_base[c] = he;
    v_base[c] = nv;
    for (const Vertex& v : g.vertices) {
      Vertex nvert;
      nvert.id = nv++;
      for (HalfEdge h : v.rotation) nvert.rotation.push_back(h + he);
      out.vertices.push_back(std::move(nvert));
    }
    for (const auto& e : g.edges) out.edges.push_back({e[0] + he, e[1] + he});
    ext_he[c].resize(g.n_externals());
    for (const External& x : g.externals) ext_he[c][x.label] = x.half_edge + he;
    he += 2 * g.n_edges() + g.n_externals();
  }
  for (const auto& [a, b] : net.links)
    out.edges.push_back({ext_he[a.component][a.label], ext_he[b.component][b.label]});
  for (std::size_t l = 0; l < net.externals.size(); ++l) {
    const PortRef& p = net.externals[l];
    out.externals.push_back({static_cast<std::int32_t>(l), ext_he[p.component][p.label]});
  }
  out.kind = all_maps ? MapKind::Map : MapKind::Graph;
  return canonicalize(out);
}

GadgetNetwork network_of(const MixedMap& gadget, TraceMode mode, int threads) {
  GadgetNetwork net;
  NetComponent comp;
  comp.table = count_vr(gadget, mode, threads);
  comp.realization = gadget;
  net.components.push_back(std::move(comp));
  for (int l = 0; l < gadget.n_externals(); ++l) net.externals.push_back({0, l});
  return net;
}

}  // namespace etrails

#include "etrails/reductions.hpp"

#include <algorithm>
#include <cmath>

#include "etrails/chain.hpp"
#include "etrails/gadgets.hpp"
#include "etrails/kotzig.hpp"

namespace etrails {

std::vector<long long> select_primes(int max_count, long long lower,
                                     const mpz_class& product_bound) {
  if (max_count < 1) throw MapError("select_primes: need room for at least one prime");
  std::vector<long long> out;
  mpz_class product = 1;
  long long candidate = std::max(lower, 1LL);
  while (static_cast<int>(out.size()) < max_count &&
         (out.empty() || product < product_bound)) {
    ++candidate;
    while (!is_prime(candidate)) ++candidate;
    out.push_back(candidate);
    product *= candidate;
  }
  if (product < product_bound)
    throw MapError("select_primes: impossible bounds (ran out of primes)");
  return out;
}

mpz_class q_closure_factor(int d) {
  mpz_class half_fac;
  mpz_fac_ui(half_fac.get_mpz_t(), d / 2);
  mpz_class two_pow = 1;
  mpz_mul_2exp(two_pow.get_mpz_t(), two_pow.get_mpz_t(), d / 2);
  return half_fac * two_pow * q_route_constant(d);
}

namespace {

// Q(d,p) with its (2j-1,2j)-th output half-edges connected; externals are the
// d inputs.
GadgetNetwork q_with_closed_outputs(int d, int p) {
  GadgetNetwork q = build_q(d, p);
  GadgetNetwork out;
  out.components = std::move(q.components);
  out.links = std::move(q.links);
  for (int j = 0; j < d / 2; ++j)
    out.links.push_back({q.externals[d + 2 * j], q.externals[d + 2 * j + 1]});
  for (int i = 0; i < d; ++i) out.externals.push_back(q.externals[i]);
  return out;
}

MixedMap plain_vertex(int degree, MapKind kind, const std::vector<int>* rotation_labels = nullptr) {
  MixedMap m;
  m.kind = kind;
  Vertex v;
  v.id = 0;
  for (int i = 0; i < degree; ++i)
    v.rotation.push_back(rotation_labels ? (*rotation_labels)[i] : i);
  m.vertices.push_back(v);
  for (int i = 0; i < degree; ++i) m.externals.push_back({i, m.vertices[0].rotation[i]});
  return canonicalize(m);
}

NetComponent plain_vertex_component(int degree, MapKind kind, TraceMode mode) {
  NetComponent c;
  c.realization = plain_vertex(degree, kind);
  c.table = count_vr(*c.realization, mode);
  return c;
}

}  // namespace

ExpandResult expand_to_4regular(const MixedMap& g, int p, ReplaceThreshold threshold,
                                int threads) {
  CompiledMap c = compile(g);
  if (!c.all_degrees_even()) throw MapError("expand_to_4regular: odd degrees");
  if (!c.connected()) throw MapError("expand_to_4regular: input must be connected");
  if (c.n_externals() != 0) throw MapError("expand_to_4regular: input must be closed");
  for (int v = 0; v < c.n_vertices; ++v)
    if (c.degree(v) < 4)
      throw MapError("expand_to_4regular: degree-2 vertices must be contracted first");
  if (p <= c.max_degree()) throw MapError("expand_to_4regular: p must exceed the max degree");
  int cutoff = (threshold == ReplaceThreshold::GreaterThan4) ? 5 : 4;

  ExpandResult res;
  res.p = p;
  std::map<int, NetComponent> q_cache;  // degree -> composed Q closure component
  for (int v = 0; v < c.n_vertices; ++v) {
    int d = c.degree(v);
    if (d >= cutoff) {
      auto it = q_cache.find(d);
      if (it == q_cache.end()) {
        GadgetNetwork closed = q_with_closed_outputs(d, p);
        NetComponent comp;
        comp.table = compose_vr(closed, threads);
        comp.realization = flatten(closed);
        it = q_cache.emplace(d, std::move(comp)).first;
      }
      res.network.components.push_back(it->second);
      res.replaced[d] += 1;
    } else {
      res.network.components.push_back(plain_vertex_component(d, g.kind, TraceMode::General));
    }
  }
  for (const auto& e : c.edge_slots) {
    int u = c.vertex_of[e[0]], v = c.vertex_of[e[1]];
    res.network.links.push_back(
        {{u, e[0] - c.rot_offset[u]}, {v, e[1] - c.rot_offset[v]}});
  }
  return res;
}

BigCount unscale_and_crt(const std::vector<ResiduePair>& pairs, const DegreeProfile& profile) {
  if (pairs.empty()) throw MapError("unscale_and_crt: no residues");
  // CRT with incremental reconstruction
  mpz_class x = 0, modulus = 1;
  for (const ResiduePair& pr : pairs) {
    mpz_class p = pr.modulus;
    mpz_class factor = 1;
    for (const auto& [d, nd] : profile) {
      mpz_class f = q_closure_factor(d) % p;
      mpz_class fp;
      mpz_powm_ui(fp.get_mpz_t(), f.get_mpz_t(), nd, p.get_mpz_t());
      factor = factor * fp % p;
    }
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), factor.get_mpz_t(), p.get_mpz_t()) == 0)
      throw MapError("unscale_and_crt: non-invertible factor; is p larger than every degree?");
    mpz_class target = pr.residue % p * inv % p;
    // solve x + modulus*k == target (mod p)
    mpz_class minv;
    if (mpz_invert(minv.get_mpz_t(), mpz_class(modulus % p).get_mpz_t(), p.get_mpz_t()) == 0)
      throw MapError("unscale_and_crt: moduli are not pairwise coprime");
    mpz_class k = (target - x) % p * minv % p;
    k = (k % p + p) % p;
    x += modulus * k;
    modulus *= p;
  }
  x = (x % modulus + modulus) % modulus;
  return x;
}

BigCount count_et_via_crt(const MixedMap& g, ReplaceThreshold threshold, int threads,
                          std::vector<long long>* primes_used) {
  CompiledMap c = compile(g);
  mpz_class bound = 1;
  for (int v = 0; v < c.n_vertices; ++v) bound *= pairing_count(c.degree(v));
  bound += 1;  // primes' product must exceed the count bound
  std::vector<long long> primes =
      select_primes(std::numeric_limits<int>::max(), c.max_degree(), bound);
  if (primes_used) *primes_used = primes;

  std::vector<ResiduePair> residues;
  DegreeProfile profile;
  for (long long p : primes) {
    ExpandResult ex = expand_to_4regular(g, static_cast<int>(p), threshold, threads);
    BigCount ti = compose_closed(ex.network, threads);
    residues.push_back({ti % p, mpz_class(p)});
    profile = ex.replaced;
  }
  return unscale_and_crt(residues, profile);
}

// ---------------------------------------------------------------------------
// planarize

namespace {

struct Pt {
  mpq_class x, y;
};

mpq_class cross2(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }

// counterclockwise angular order, then reversed where clockwise is needed
bool ccw_less(const Pt& a, const Pt& b) {
  auto half = [](const Pt& p) { return (p.y < 0 || (p.y == 0 && p.x < 0)) ? 1 : 0; };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross2(a, b) > 0;
}

}  // namespace

PlanarizeResult planarize(const MixedMap& g4, int p, std::uint64_t seed) {
  if (!is_prime(p) || p % 2 == 0) throw MapError("planarize: p must be an odd prime");
  CompiledMap c = compile(g4);
  if (c.n_externals() != 0) throw MapError("planarize: input must be closed");
  for (int v = 0; v < c.n_vertices; ++v)
    if (c.degree(v) != 4) throw MapError("planarize: input must be 4-regular");
  if (!c.connected()) throw MapError("planarize: input must be connected");

  // an input that is already a plane map needs no crossings removed
  if (g4.kind == MapKind::Map) {
    FaceStructure fs = face_structure(c);
    if (fs.genus == 0) {
      PlanarizeResult res;
      res.plane_map = canonicalize(g4);
      res.network = network_of(res.plane_map.with_kind(MapKind::Graph), TraceMode::General);
      res.report.seed_used = seed;
      res.p = p;
      return res;
    }
  }

  // straight-line drawing needs one distinct chord per edge
  for (const auto& e : c.edge_slots) {
    if (c.vertex_of[e[0]] == c.vertex_of[e[1]])
      throw MapError("planarize: loops cannot be drawn with straight-line edges");
  }
  {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : c.edge_slots) {
      int u = c.vertex_of[e[0]], v = c.vertex_of[e[1]];
      if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
        throw MapError("planarize: parallel edges cannot be drawn with straight-line edges");
    }
  }

  int n = c.n_vertices;
  int m = static_cast<int>(c.edge_slots.size());

  for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
    std::mt19937_64 rng(seed + attempt);
    std::uniform_int_distribution<int> jitter(0, 1023);
    // vertices on the parabola (x, x^2): strictly convex position, no chord
    // ever passes through a third vertex
    std::vector<Pt> pos(n);
    for (int v = 0; v < n; ++v) {
      mpq_class x = mpq_class(v) + mpq_class(jitter(rng), 2048);
      x.canonicalize();
      pos[v] = {x, x * x};
    }

    struct Crossing {
      int ea, eb;
      mpq_class x, y;
      int node_index;  // component index of the crossing node
      std::array<int, 2> label_on_a;  // node labels facing (first, second) endpoint of ea
      std::array<int, 2> label_on_b;
    };
    std::vector<Crossing> crossings;
    auto endpoints = [&](int e) {
      return std::pair<int, int>{c.vertex_of[c.edge_slots[e][0]], c.vertex_of[c.edge_slots[e][1]]};
    };
    bool degenerate = false;
    for (int e = 0; e < m && !degenerate; ++e) {
      auto [a, b] = endpoints(e);
      mpq_class lo = std::min(pos[a].x, pos[b].x), hi = std::max(pos[a].x, pos[b].x);
      for (int f = e + 1; f < m; ++f) {
        auto [u, v] = endpoints(f);
        if (u == a || u == b || v == a || v == b) continue;
        bool u_in = pos[u].x > lo && pos[u].x < hi;
        bool v_in = pos[v].x > lo && pos[v].x < hi;
        if (u_in == v_in) continue;  // chords of a convex curve cross iff they alternate
        // chord through parabola points s,t is y = (s+t)x - st
        mpq_class s1 = pos[a].x + pos[b].x, p1 = pos[a].x * pos[b].x;
        mpq_class s2 = pos[u].x + pos[v].x, p2 = pos[u].x * pos[v].x;
        if (s1 == s2) continue;  // parallel chords, cannot cross
        mpq_class cx = (p1 - p2) / (s1 - s2);
        cx.canonicalize();
        mpq_class cy = s1 * cx - p1;
        cy.canonicalize();
        crossings.push_back({e, f, cx, cy, -1, {0, 2}, {1, 3}});
      }
    }

    // order crossings along each edge; equal parameters mean three concurrent
    // chords, which a new perturbation fixes
    std::vector<std::vector<int>> on_edge(m);
    for (std::size_t i = 0; i < crossings.size(); ++i) {
      on_edge[crossings[i].ea].push_back(static_cast<int>(i));
      on_edge[crossings[i].eb].push_back(static_cast<int>(i));
    }
    for (int e = 0; e < m && !degenerate; ++e) {
      auto [a, b] = endpoints(e);
      bool ltr = pos[a].x < pos[b].x;
      std::sort(on_edge[e].begin(), on_edge[e].end(), [&](int i, int j) {
        return ltr ? crossings[i].x < crossings[j].x : crossings[i].x > crossings[j].x;
      });
      for (std::size_t i = 0; i + 1 < on_edge[e].size(); ++i)
        if (crossings[on_edge[e][i]].x == crossings[on_edge[e][i + 1]].x) degenerate = true;
    }
    if (degenerate) continue;

    // components: one plain vertex per input vertex (rotation read off the
    // drawing, clockwise), then one crossover node per crossing
    GadgetNetwork net;
    for (int v = 0; v < n; ++v) {
      // incident slots sorted by direction, counterclockwise, then reversed
      std::vector<int> slots;
      int end = (v + 1 < n) ? c.rot_offset[v + 1] : c.n_half_edges;
      for (int s = c.rot_offset[v]; s < end; ++s) slots.push_back(s);
      std::vector<Pt> dir(slots.size());
      for (std::size_t i = 0; i < slots.size(); ++i) {
        int w = c.vertex_of[c.twin[slots[i]]];
        dir[i] = {pos[w].x - pos[v].x, pos[w].y - pos[v].y};
      }
      std::vector<int> order(slots.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      std::sort(order.begin(), order.end(),
                [&](int i, int j) { return ccw_less(dir[i], dir[j]); });
      std::reverse(order.begin(), order.end());
      NetComponent comp;
      comp.realization = plain_vertex(4, MapKind::Map);
      comp.table = count_vr(*comp.realization, TraceMode::General);
      net.components.push_back(std::move(comp));
      // remember which network label each slot got: label = position in the
      // clockwise rotation
      for (std::size_t i = 0; i < order.size(); ++i)
        c.ext_label[slots[order[i]]] = static_cast<int>(i);  // reuse as scratch
    }
    NetComponent cross_proto;
    cross_proto.realization = build_crossover(p, MapKind::Map);
    cross_proto.table = formula_oracle({GadgetBlueprint::Kind::Crossover, 0, p, 0, 0});
    for (auto& cr : crossings) {
      cr.node_index = static_cast<int>(net.components.size());
      net.components.push_back(cross_proto);
      // clockwise port order around the crossing point: e-side, f-side,
      // e-side, f-side; node labels 0,1,2,3 in that order
      auto [a, b] = endpoints(cr.ea);
      auto [u, v] = endpoints(cr.eb);
      std::array<int, 4> who = {a, b, u, v};
      std::array<Pt, 4> dirs;
      for (int i = 0; i < 4; ++i)
        dirs[i] = {pos[who[i]].x - cr.x, pos[who[i]].y - cr.y};
      std::array<int, 4> order = {0, 1, 2, 3};
      std::sort(order.begin(), order.end(),
                [&](int i, int j) { return ccw_less(dirs[i], dirs[j]); });
      std::reverse(order.begin(), order.end());
      int ia = static_cast<int>(std::find(order.begin(), order.end(), 0) - order.begin());
      std::array<int, 4> seq;  // node label l faces endpoint who[seq[l]]
      for (int l = 0; l < 4; ++l) seq[l] = order[(ia + l) % 4];
      cr.label_on_a = {0, 2};  // seq[0] == 0 faces a, seq[2] must face b
      if (seq[2] != 1) throw MapError("planarize: crossing port order is inconsistent (bug)");
      cr.label_on_b = (seq[1] == 2) ? std::array<int, 2>{1, 3} : std::array<int, 2>{3, 1};
    }

    // stitch segments: along each edge, endpoint port -> node ports -> endpoint
    for (int e = 0; e < m; ++e) {
      auto [sa, sb] = std::pair<int, int>{c.edge_slots[e][0], c.edge_slots[e][1]};
      PortRef cur = {c.vertex_of[sa], c.ext_label[sa]};
      for (int ci : on_edge[e]) {
        const Crossing& cr = crossings[ci];
        std::array<int, 2> lab = (cr.ea == e) ? cr.label_on_a : cr.label_on_b;
        net.links.push_back({cur, {cr.node_index, lab[0]}});
        cur = {cr.node_index, lab[1]};
      }
      net.links.push_back({cur, {c.vertex_of[sb], c.ext_label[sb]}});
    }

    MixedMap flat = flatten(net);
    FaceStructure fs = face_structure(compile(flat));
    if (fs.genus != 0)
      throw MapError("planarize: produced a non-plane rotation system (genus " +
                     std::to_string(fs.genus) + ")");

    PlanarizeResult res;
    res.plane_map = std::move(flat);
    res.network = std::move(net);
    res.p = p;
    res.report.seed_used = seed + attempt;
    for (const auto& cr : crossings) res.report.crossings.push_back({cr.ea, cr.eb});
    return res;
  }
  throw MapError("planarize: perturbation failed repeatedly; re-seed");
}

// ---------------------------------------------------------------------------

MixedMap to_atrail_instance(const MixedMap& g4) {
  CompiledMap c = compile(g4);
  if (c.n_externals() != 0) throw MapError("to_atrail_instance: input must be closed");
  if (!c.connected()) throw MapError("to_atrail_instance: input must be connected");
  for (int v = 0; v < c.n_vertices; ++v)
    if (c.degree(v) != 4) throw MapError("to_atrail_instance: input must be 4-regular");

  GadgetNetwork net;
  NetComponent proto;
  proto.realization = build_deg4_map_gadget();
  proto.table = count_vr(*proto.realization, TraceMode::ATrail);
  for (int v = 0; v < c.n_vertices; ++v) net.components.push_back(proto);
  for (const auto& e : c.edge_slots) {
    int u = c.vertex_of[e[0]], v = c.vertex_of[e[1]];
    net.links.push_back({{u, e[0] - c.rot_offset[u]}, {v, e[1] - c.rot_offset[v]}});
  }
  return flatten(net);
}

// ---------------------------------------------------------------------------
// AP reduction

namespace {

int ap_layer_count(int d, int n, double eps, double calibration_c) {
  double df = static_cast<double>(factorial_ll(d));
  double arg = 4.0 * df * n / eps;
  double t = calibration_c * d * d * std::log(static_cast<double>(d)) * std::log(arg);
  return std::max(1, static_cast<int>(std::ceil(t)));
}

// Shuffle gadget as a network component with its outputs pair-closed; the open
// 2d-label table comes from the chain distribution (gadget/chain equivalence).
NetComponent shuffle_component(int d, int layers, int chain_cap) {
  PermDistribution dist = chain_distribution(d, layers, chain_cap);
  VRTable open;
  open.mode = TraceMode::ATrail;
  open.n_labels = 2 * d;
  long long nf = factorial_ll(d);
  for (long long r = 0; r < nf; ++r) {
    if (dist.weight[r] == 0) continue;
    std::vector<int> perm = perm_unrank(d, r);
    std::vector<int> one_based(d);
    for (int i = 0; i < d; ++i) one_based[i] = perm[i] + 1;
    open.counts[perm_route_type(one_based)] = dist.weight[r];
  }
  GadgetNetwork closing;
  NetComponent raw;
  raw.table = std::move(open);
  raw.realization = build_shuffle_gadget(d, layers);
  closing.components.push_back(std::move(raw));
  for (int j = 0; j < d / 2; ++j)
    closing.links.push_back({{0, d + 2 * j}, {0, d + 2 * j + 1}});
  for (int i = 0; i < d; ++i) closing.externals.push_back({0, i});
  NetComponent out;
  out.table = compose_vr(closing);
  out.realization = flatten(closing);
  return out;
}

}  // namespace

ApInstance ap_instance(const MixedMap& g, double eps, double calibration_c, int chain_cap) {
  if (eps <= 0) throw MapError("ap_instance: eps must be positive");
  CompiledMap c = compile(g);
  if (c.n_externals() != 0) throw MapError("ap_instance: input must be closed");
  if (!c.connected()) throw MapError("ap_instance: input must be connected");
  if (!c.all_degrees_even()) throw MapError("ap_instance: input must be Eulerian");
  for (int v = 0; v < c.n_vertices; ++v)
    if (c.degree(v) < 4)
      throw MapError("ap_instance: degree-2 vertices must be contracted first");

  ApInstance inst;
  inst.n_vertices_in = c.n_vertices;
  std::map<int, NetComponent> cache;
  inst.normalizer = 1;
  for (int v = 0; v < c.n_vertices; ++v) {
    int d = c.degree(v);
    auto it = cache.find(d);
    if (it == cache.end()) {
      int layers = ap_layer_count(d, c.n_vertices, eps, calibration_c);
      it = cache.emplace(d, shuffle_component(d, layers, chain_cap)).first;
      inst.layer_counts[d] = layers;
      inst.gadget_sizes[d] = shuffle_vertex_count(d, layers);
    }
    inst.network.components.push_back(it->second);
    // R_d = 2^{D_d} 2^{d/2} (d/2)! / d!
    mpz_class num = 1;
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), inst.gadget_sizes[d] + d / 2);
    mpz_class half_fac, fac;
    mpz_fac_ui(half_fac.get_mpz_t(), d / 2);
    mpz_fac_ui(fac.get_mpz_t(), d);
    mpq_class rd(num * half_fac, fac);
    rd.canonicalize();
    inst.normalizer *= rd;
  }
  inst.normalizer.canonicalize();
  for (const auto& e : c.edge_slots) {
    int u = c.vertex_of[e[0]], v = c.vertex_of[e[1]];
    inst.network.links.push_back({{u, e[0] - c.rot_offset[u]}, {v, e[1] - c.rot_offset[v]}});
  }
  inst.gprime = flatten(inst.network);
  return inst;
}

BigCount exact_atrails_oracle(const ApInstance& inst, int threads) {
  return compose_closed(inst.network, threads);
}

mpq_class estimate_et(const MixedMap& g, double eps, double calibration_c,
                      const std::function<BigCount(const ApInstance&, double)>& oracle,
                      int chain_cap) {
  CompiledMap c = compile(g);
  int n = c.n_vertices;
  if (eps > 2.0 * n) {
    mpz_class three_n;
    mpz_ui_pow_ui(three_n.get_mpz_t(), 3, n);
    return mpq_class(three_n);
  }
  ApInstance inst = ap_instance(g, eps, calibration_c, chain_cap);
  BigCount a = oracle(inst, eps / 2);
  mpq_class est = mpq_class(a) / inst.normalizer;
  est.canonicalize();
  return est;
}

}  // namespace etrails

#include "etrails/enumerate_gadgets.hpp"

#include <algorithm>
#include <set>

namespace etrails {

namespace {

// Gadget skeleton on k vertices: external host per label, edge multiplicities
// m[i][j] (i <= j; m[i][i] counts loops, each eating 2 degree).
struct Skeleton {
  int k = 0;
  std::array<int, 4> ext_host{};
  std::vector<std::vector<int>> mult;

  bool connected() const {
    std::vector<int> comp(k, -1);
    std::vector<int> stack = {0};
    comp[0] = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < k; ++u) {
        int c = (u < v) ? mult[u][v] : mult[v][u];
        if (u == v) continue;
        if (c > 0 && comp[u] == -1) {
          comp[u] = 0;
          stack.push_back(u);
        }
      }
    }
    return std::none_of(comp.begin(), comp.end(), [](int c) { return c == -1; });
  }

  // lexicographically smallest encoding over vertex permutations; external
  // labels stay fixed
  std::vector<int> certificate() const {
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    std::vector<int> best;
    std::vector<int> enc;
    do {
      enc.clear();
      for (int l = 0; l < 4; ++l) enc.push_back(perm[ext_host[l]]);
      // mult matrix in permuted order; inv[p] = original vertex at new slot p
      std::vector<int> inv(k);
      for (int i = 0; i < k; ++i) inv[perm[i]] = i;
      for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
          int a = inv[i], b = inv[j];
          enc.push_back(a <= b ? mult[a][b] : mult[b][a]);
        }
      if (best.empty() || enc < best) best = enc;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }

  MixedMap to_map() const {
    MixedMap m;
    m.kind = MapKind::Graph;
    std::vector<std::vector<HalfEdge>> rot(k);
    int next = 0;
    for (int l = 0; l < 4; ++l) {
      rot[ext_host[l]].push_back(next);
      m.externals.push_back({l, next});
      ++next;
    }
    for (int i = 0; i < k; ++i) {
      for (int loops = 0; loops < mult[i][i]; ++loops) {
        rot[i].push_back(next);
        rot[i].push_back(next + 1);
        m.edges.push_back({next, next + 1});
        next += 2;
      }
      for (int j = i + 1; j < k; ++j) {
        for (int c = 0; c < mult[i][j]; ++c) {
          rot[i].push_back(next);
          rot[j].push_back(next + 1);
          m.edges.push_back({next, next + 1});
          next += 2;
        }
      }
    }
    for (int i = 0; i < k; ++i) m.vertices.push_back({i, std::move(rot[i])});
    return canonicalize(m);
  }
};

void enumerate_exact(int k, const EnumOptions& opts, std::set<std::vector<int>>* seen,
                     const std::function<void(const MixedMap&)>& fn) {
  Skeleton sk;
  sk.k = k;
  sk.mult.assign(k, std::vector<int>(k, 0));
  std::vector<int> deg(k);

  // pair list in lex order: loops (i,i) first per row when allowed
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < k; ++i) {
    if (opts.allow_loops) cells.push_back({i, i});
    for (int j = i + 1; j < k; ++j) cells.push_back({i, j});
  }

  std::function<void(std::size_t)> fill = [&](std::size_t ci) {
    // feasibility: a vertex whose remaining cells are exhausted must be full
    if (ci == cells.size()) {
      for (int i = 0; i < k; ++i)
        if (deg[i] != 4) return;
      if (!sk.connected()) return;
      if (seen && !seen->insert(sk.certificate()).second) return;
      fn(sk.to_map());
      return;
    }
    auto [i, j] = cells[ci];
    int unit = (i == j) ? 2 : 1;
    int cap_i = 4 - deg[i];
    int cap_j = (i == j) ? cap_i : 4 - deg[j];
    int max_c = std::min(cap_i, cap_j) / unit;
    for (int c = 0; c <= max_c; ++c) {
      sk.mult[i][j] = c;
      deg[i] += c * unit;
      if (i != j) deg[j] += c;
      // when this was vertex i's last cell, prune unless i is full
      bool last_of_i = (ci + 1 == cells.size()) || (cells[ci + 1].first != i);
      if (!last_of_i || deg[i] == 4) fill(ci + 1);
      sk.mult[i][j] = 0;
      deg[i] -= c * unit;
      if (i != j) deg[j] -= c;
    }
  };

  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        for (int d = 0; d < k; ++d) {
          sk.ext_host = {a, b, c, d};
          std::fill(deg.begin(), deg.end(), 0);
          bool ok = true;
          for (int l = 0; l < 4; ++l) {
            if (++deg[sk.ext_host[l]] > 4) ok = false;
          }
          if (ok) fill(0);
          std::fill(deg.begin(), deg.end(), 0);
        }
}

}  // namespace

void enumerate_gadgets(int n, const EnumOptions& opts,
                       const std::function<void(const MixedMap&)>& fn) {
  if (n < 1) throw MapError("enumerate_gadgets: n must be >= 1");
  std::set<std::vector<int>> seen;
  for (int k = 1; k <= n; ++k) {
    std::set<std::vector<int>> seen_k;
    enumerate_exact(k, opts, opts.dedup ? &seen_k : nullptr, fn);
  }
}

long long count_gadgets(int n, const EnumOptions& opts) {
  long long c = 0;
  enumerate_gadgets(n, opts, [&c](const MixedMap&) { ++c; });
  return c;
}

RegionScanReport region_scan(int n, const EnumOptions& opts, const mpq_class& tol, int prec_bits,
                             int threads, bool keep_rows) {
  RegionScanReport rep;
  rep.n = n;
  bool first = true;
  enumerate_gadgets(n, opts, [&](const MixedMap& g) {
    RegionScanRow row;
    row.vertices = g.n_vertices();
    row.sig = signature_of(g, threads);
    row.cls = region_classify(row.sig.arr(), tol, prec_bits);
    row.margin = region_margin(row.sig.arr(), prec_bits);
    rep.gadgets++;
    if (first || row.margin < rep.min_margin) rep.min_margin = row.margin;
    first = false;
    if (row.cls == RegionClass::Outside) {
      rep.outside++;
      rep.outside_witnesses.push_back(row);
    }
    if (keep_rows) rep.rows.push_back(row);
  });
  return rep;
}

ClosureSampleReport closure_sample(long long trials, std::uint64_t seed, const mpq_class& tol,
                                   int prec_bits) {
  if (trials < 1) throw MapError("closure_sample: trials must be >= 1");
  std::mt19937_64 rng(seed);
  RegionConstants rc = region_constants(prec_bits);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 5);

  auto draw = [&]() -> std::array<mpq_class, 3> {
    if (uni(rng) < 0.5) {
      // boundary-parametrized point, randomly permuted
      mpq_class x = mpq_class(uni(rng)) * rc.w;
      x.canonicalize();
      std::array<mpq_class, 3> p = region_boundary_point(x, prec_bits);
      p[2] = 1 - p[0] - p[1];  // absorb dyadic rounding so the entries sum to 1
      p[2].canonicalize();
      std::array<int, 3> perm = {0, 1, 2};
      int which = pick(rng);
      for (int i = 0; i < which; ++i) std::next_permutation(perm.begin(), perm.end());
      return {p[perm[0]], p[perm[1]], p[perm[2]]};
    }
    return sample_point_in_s(rng, tol, prec_bits);
  };

  ClosureSampleReport rep;
  rep.trials = trials;
  bool first = true;
  for (long long t = 0; t < trials; ++t) {
    auto a = draw();
    auto b = draw();
    Signature sa = make_signature(a[0], a[1], a[2]);
    Signature sb = make_signature(b[0], b[1], b[2]);
    Signature glued = glue_signature(sa, sb);
    double margin = region_margin(glued.arr(), prec_bits);
    if (first || margin < rep.min_margin) rep.min_margin = margin;
    first = false;
    if (region_classify(glued.arr(), tol, prec_bits) == RegionClass::Outside) {
      rep.outside++;
      rep.counterexamples.push_back(glued.arr());
    }
  }
  return rep;
}

}  // namespace etrails

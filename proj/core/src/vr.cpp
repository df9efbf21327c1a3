#include "etrails/vr.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace etrails {

RouteType RouteType::of(std::vector<std::pair<std::int32_t, std::int32_t>> raw) {
  for (auto& [a, b] : raw)
    if (a > b) std::swap(a, b);
  std::sort(raw.begin(), raw.end());
  return RouteType{std::move(raw)};
}

std::string RouteType::str() const {
  std::ostringstream os;
  for (const auto& [a, b] : pairs) os << '{' << a << ',' << b << '}';
  return os.str();
}

std::vector<RouteType> all_route_types(int n_labels) {
  std::vector<RouteType> out;
  std::vector<std::pair<std::int32_t, std::int32_t>> acc;
  std::vector<int> free_labels(n_labels);
  for (int i = 0; i < n_labels; ++i) free_labels[i] = i;
  std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& rest) {
    if (rest.empty()) {
      out.push_back(RouteType::of(acc));
      return;
    }
    int a = rest[0];
    for (std::size_t i = 1; i < rest.size(); ++i) {
      int b = rest[i];
      std::vector<int> next;
      for (std::size_t k = 1; k < rest.size(); ++k)
        if (k != i) next.push_back(rest[k]);
      acc.push_back({a, b});
      rec(next);
      acc.pop_back();
    }
  };
  if (n_labels % 2 != 0) throw MapError("route types need an even number of labels");
  if (n_labels == 0) return {RouteType{}};
  rec(free_labels);
  std::sort(out.begin(), out.end());
  return out;
}

RouteType perm_route_type(const std::vector<int>& perm) {
  int d = static_cast<int>(perm.size());
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (int i = 1; i <= d; ++i) pairs.push_back({i - 1, d + perm[i - 1] - 1});
  return RouteType::of(std::move(pairs));
}

const BigCount& VRTable::at(const RouteType& t) const {
  static const BigCount zero = 0;
  auto it = counts.find(t);
  return it == counts.end() ? zero : it->second;
}

BigCount VRTable::total() const {
  BigCount s = 0;
  for (const auto& [k, v] : counts) s += v;
  return s;
}

namespace {

// One enumeration pass restricted to vertex-0 pairing indices == residue mod
// stride. Shared by count_vr and count_closed; merging is per-key addition, so
// results are independent of the partitioning.
template <typename Leaf>
void run_partitioned(const CompiledMap& m, TraceMode mode, int threads, const Leaf& leaf_factory) {
  threads = std::max(1, threads);
  if (m.n_vertices == 0) threads = 1;
  if (threads == 1) {
    auto leaf = leaf_factory(0);
    enumerate_transition_systems(m, mode, leaf);
    return;
  }
  std::vector<std::future<void>> futs;
  for (int t = 0; t < threads; ++t) {
    futs.push_back(std::async(std::launch::async, [&, t] {
      auto leaf = leaf_factory(t);
      enumerate_transition_systems(m, mode, leaf,
                                   [t, threads](int first) { return first % threads == t; });
    }));
  }
  for (auto& f : futs) f.get();
}

}  // namespace

VRTable count_vr(const CompiledMap& m, TraceMode mode, int threads) {
  if (m.n_externals() < 2) throw MapError("count_vr needs at least 2 externals");
  if (!m.all_degrees_even()) throw MapError("odd-degree vertex");
  if (mode == TraceMode::ATrail && m.kind != MapKind::Map)
    throw MapError("a-trail mode requires kind = map");

  threads = std::max(1, threads);
  std::vector<std::map<RouteType, BigCount>> partial(threads);
  run_partitioned(m, mode, threads, [&](int t) {
    return [&m, mode, t, &partial](const TransitionSystem& ts) {
      auto dec = trace(m, ts, mode);
      if (!dec || dec->closed_cycles != 0) return;
      std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
      for (const Route& r : dec->routes) pairs.push_back({r.start_label, r.end_label});
      partial[t][RouteType::of(std::move(pairs))] += 1;
    };
  });
  VRTable out;
  out.mode = mode;
  out.n_labels = m.n_externals();
  for (auto& p : partial)
    for (auto& [k, v] : p) out.counts[k] += v;
  return out;
}

VRTable count_vr(const MixedMap& m, TraceMode mode, int threads) {
  return count_vr(compile(m), mode, threads);
}

BigCount count_closed(const CompiledMap& m, TraceMode mode, int threads) {
  if (m.n_externals() != 0) throw MapError("count_closed requires a closed map");
  if (!m.connected()) throw MapError("count_closed requires a connected map");
  if (!m.all_degrees_even()) throw MapError("odd-degree vertex");
  if (mode == TraceMode::ATrail && m.kind != MapKind::Map)
    throw MapError("a-trail mode requires kind = map");

  threads = std::max(1, threads);
  std::vector<BigCount> partial(threads, BigCount(0));
  run_partitioned(m, mode, threads, [&](int t) {
    return [&m, mode, t, &partial](const TransitionSystem& ts) {
      auto dec = trace(m, ts, mode);
      if (dec && dec->closed_cycles == 1) partial[t] += 1;
    };
  });
  BigCount total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

BigCount count_closed(const MixedMap& m, TraceMode mode, int threads) {
  return count_closed(compile(m), mode, threads);
}

}  // namespace etrails

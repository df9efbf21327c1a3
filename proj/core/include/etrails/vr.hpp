#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "etrails/pairings.hpp"

namespace etrails {

using BigCount = mpz_class;

// Perfect matching on external labels, canonical form: each pair (a < b),
// pairs sorted lexicographically.
struct RouteType {
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;

  static RouteType of(std::vector<std::pair<std::int32_t, std::int32_t>> raw);
  std::string str() const;  // "{0,1}{2,3}"
  auto operator<=>(const RouteType&) const = default;
};

// Enumerates all perfect matchings of labels 0..2d-1 in canonical order.
std::vector<RouteType> all_route_types(int n_labels);

// Permutation p of S_d as a route type {IN_i, OUT_{p(i)}} with IN_i = i-1 and
// OUT_j = d + j - 1.
RouteType perm_route_type(const std::vector<int>& perm_one_based);

struct VRTable {
  TraceMode mode = TraceMode::General;
  int n_labels = 0;
  std::map<RouteType, BigCount> counts;  // absent key == 0

  const BigCount& at(const RouteType& t) const;
  BigCount total() const;
};

// For each route type, the number of transition systems (restricted per mode)
// whose trace yields routes of that type and zero closed cycles. Exact.
VRTable count_vr(const MixedMap& m, TraceMode mode, int threads = 1);
VRTable count_vr(const CompiledMap& m, TraceMode mode, int threads = 1);

// Number of transition systems tracing to exactly one closed cycle covering
// all edges: #ET in general mode, #A-trails in a-trail mode.
BigCount count_closed(const MixedMap& m, TraceMode mode, int threads = 1);
BigCount count_closed(const CompiledMap& m, TraceMode mode, int threads = 1);

}  // namespace etrails

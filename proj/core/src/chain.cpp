#include "etrails/chain.hpp"

#include <algorithm>
#include <cmath>

#include "etrails/gadgets.hpp"

namespace etrails {

long long factorial_ll(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

int perm_rank(const std::vector<int>& perm) {
  int d = static_cast<int>(perm.size());
  int rank = 0;
  for (int i = 0; i < d; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < d; ++j)
      if (perm[j] < perm[i]) ++smaller;
    rank = rank * (d - i) + smaller;
  }
  return rank;
}

std::vector<int> perm_unrank(int d, long long rank) {
  std::vector<int> lehmer(d);
  for (int i = d - 1; i >= 0; --i) {
    lehmer[i] = static_cast<int>(rank % (d - i));
    rank /= (d - i);
  }
  std::vector<int> pool(d);
  for (int i = 0; i < d; ++i) pool[i] = i;
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) {
    perm[i] = pool[lehmer[i]];
    pool.erase(pool.begin() + lehmer[i]);
  }
  return perm;
}

mpq_class PermDistribution::prob(int rank) const {
  mpq_class q(weight[rank]);
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), pow2);
  q /= mpq_class(den);
  q.canonicalize();
  return q;
}

bool PermDistribution::is_uniform() const {
  for (std::size_t i = 1; i < weight.size(); ++i)
    if (weight[i] != weight[0]) return false;
  return true;
}

PermDistribution chain_distribution(int d, int layers, int cap) {
  if (d < 1) throw MapError("chain_distribution: d must be >= 1");
  if (d > cap) throw MapError("chain_distribution: d exceeds the cap of " + std::to_string(cap));
  if (layers < 0) throw MapError("chain_distribution: layers must be >= 0");
  long long n = factorial_ll(d);
  PermDistribution dist;
  dist.d = d;
  dist.pow2 = 0;
  dist.weight.assign(n, mpz_class(0));
  std::vector<int> identity(d);
  for (int i = 0; i < d; ++i) identity[i] = i;
  dist.weight[perm_rank(identity)] = 1;

  // precompute the rank action of each adjacent position swap
  std::vector<std::vector<int>> swap_action(d - 1, std::vector<int>(n));
  for (long long r = 0; r < n; ++r) {
    std::vector<int> perm = perm_unrank(d, r);
    for (int pos = 0; pos + 1 < d; ++pos) {
      std::vector<int> q = perm;
      std::swap(q[pos], q[pos + 1]);  // swap contents of wires pos, pos+1
      swap_action[pos][r] = perm_rank(q);
    }
  }

  std::vector<mpz_class> next(n);
  for (int t = 1; t <= layers; ++t) {
    int first = (t % 2 == 1) ? 0 : 1;  // 0-based leading position of the layer
    for (int pos = first; pos + 1 < d; pos += 2) {
      for (long long r = 0; r < n; ++r) next[r] = dist.weight[r] + dist.weight[swap_action[pos][r]];
      dist.weight.swap(next);
      dist.pow2 += 1;
    }
  }
  return dist;
}

mpq_class tv_to_uniform(const PermDistribution& dist) {
  long long n = factorial_ll(dist.d);
  mpq_class acc = 0;
  mpq_class uniform(1, n);
  uniform.canonicalize();
  for (long long r = 0; r < n; ++r) {
    mpq_class diff = dist.prob(static_cast<int>(r)) - uniform;
    acc += abs(diff);
  }
  acc /= 2;
  return acc;
}

int layer_count_for(int d, double eps, double calibration_c) {
  if (d < 2) return 1;
  double df = static_cast<double>(factorial_ll(d));
  double t = calibration_c * d * d * std::log(static_cast<double>(d)) * std::log(df / eps);
  return std::max(1, static_cast<int>(std::ceil(t)));
}

MixingReport mixing_report(int d, double eps, double calibration_c, int cap) {
  if (eps <= 0 || eps >= 1) throw MapError("mixing_report: eps must be in (0,1)");
  MixingReport rep;
  rep.d = d;
  rep.layers = layer_count_for(d, eps, calibration_c);
  PermDistribution dist = chain_distribution(d, rep.layers, cap);
  rep.tv = tv_to_uniform(dist);
  rep.tv_double = rep.tv.get_d();
  rep.bound = mpq_class(mpq_class(eps) / factorial_ll(d));
  rep.bound.canonicalize();
  rep.within_bound = rep.tv <= rep.bound;

  // minimal T achieving the bound; TV is non-increasing in T at these sizes
  auto tv_at = [&](int t) { return tv_to_uniform(chain_distribution(d, t, cap)); };
  int hi = 1;
  const int hard_cap = 1 << 14;
  while (tv_at(hi) > rep.bound && hi < hard_cap) hi *= 2;
  if (tv_at(hi) <= rep.bound) {
    int lo = hi / 2;  // tv(lo) > bound (or lo == 0)
    while (lo + 1 < hi) {
      int mid = (lo + hi) / 2;
      if (tv_at(mid) <= rep.bound)
        hi = mid;
      else
        lo = mid;
    }
    rep.minimal_layers = hi;
    double df = static_cast<double>(factorial_ll(d));
    double denom = d * d * std::log(std::max(2.0, static_cast<double>(d))) * std::log(df / eps);
    rep.calibrated_c = rep.minimal_layers / denom;
  }
  return rep;
}

bool gadget_chain_check(int d, int layers, int threads, int half_edge_budget) {
  if (d % 2 != 0) throw MapError("gadget_chain_check: d must be even");
  if (d * std::max(1, layers) > half_edge_budget)
    throw MapError("gadget_chain_check: d*T exceeds the half-edge budget");
  MixedMap g = build_shuffle_gadget(d, layers);
  VRTable vr = count_vr(g, TraceMode::ATrail, threads);
  PermDistribution dist = chain_distribution(d, layers);
  BigCount total = vr.total();
  if (total == 0) return false;

  long long n = factorial_ll(d);
  std::map<RouteType, long long> perm_of;
  for (long long r = 0; r < n; ++r) {
    std::vector<int> perm = perm_unrank(d, r);
    std::vector<int> one_based(d);
    for (int i = 0; i < d; ++i) one_based[i] = perm[i] + 1;
    perm_of[perm_route_type(one_based)] = r;
  }
  // every key must be a permutation matching and match the chain weight
  for (const auto& [key, cnt] : vr.counts) {
    if (sgn(cnt) == 0) continue;
    auto it = perm_of.find(key);
    if (it == perm_of.end()) return false;
  }
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), dist.pow2);
  for (const auto& [key, r] : perm_of) {
    // vr(key)/total == weight(r)/2^pow2, cross-multiplied
    if (vr.at(key) * den != dist.weight[r] * total) return false;
  }
  return true;
}

}  // namespace etrails

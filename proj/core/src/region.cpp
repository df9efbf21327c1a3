#include "etrails/region.hpp"

#include <algorithm>

#include "etrails/mixed_map.hpp"  // MapError

namespace etrails {

Real region_boundary_f(const Real& x) {
  mpfr_prec_t prec = x.prec();
  Real one = Real::of(1L, prec);
  if (x.cmp(one) >= 0) return Real::of(0L, prec);
  Real t = (Real::of(2L, prec) * x) / (x - one);
  return (one - x) * (one - t.exp()) / Real::of(2L, prec);
}

Real region_family_f(const Real& c, const Real& x) {
  mpfr_prec_t prec = x.prec();
  Real one = Real::of(1L, prec);
  Real t = (Real::of(2L, prec) * x) / (x - one);
  Real coef = Real::of(2L, prec) * c - one;
  return -(x - one) * (one + coef * t.exp()) / Real::of(2L, prec);
}

RegionConstants region_constants(int prec_bits) {
  mpfr_prec_t prec = prec_bits + 16;
  Real one = Real::of(1L, prec);
  auto g = [&](const Real& x) {
    // (1-x)(1+exp(2x/(x-1)))/2 - x, strictly decreasing on [0,1)
    Real t = (Real::of(2L, prec) * x) / (x - one);
    return (one - x) * (one + t.exp()) / Real::of(2L, prec) - x;
  };
  Real lo = Real::of(0L, prec), hi = Real::of(mpq_class(99, 100), prec);
  for (int i = 0; i < prec_bits + 8; ++i) {
    Real mid = (lo + hi) / Real::of(2L, prec);
    if (g(mid) > Real::of(0L, prec))
      lo = mid;
    else
      hi = mid;
  }
  RegionConstants rc;
  rc.u = ((lo + hi) / Real::of(2L, prec)).to_rational();
  rc.w = rc.u / (1 - rc.u);
  rc.w.canonicalize();
  return rc;
}

const char* region_class_name(RegionClass c) {
  switch (c) {
    case RegionClass::Inside: return "inside";
    case RegionClass::Boundary: return "boundary";
    default: return "outside";
  }
}

namespace {

std::array<mpq_class, 3> sorted_desc(std::array<mpq_class, 3> s) {
  std::sort(s.begin(), s.end(), [](const mpq_class& a, const mpq_class& b) { return a > b; });
  return s;
}

}  // namespace

RegionClass region_classify(const std::array<mpq_class, 3>& sig, const mpq_class& tol,
                            int prec_bits) {
  auto s = sorted_desc(sig);
  mpfr_prec_t prec = prec_bits;
  Real fb = region_boundary_f(Real::of(s[1], prec));
  Real c = Real::of(s[2], prec);
  Real t = Real::of(tol, prec);
  Real diff = c - fb;
  if (diff.abs() <= t) return RegionClass::Boundary;
  if (diff > Real::of(0L, prec)) return RegionClass::Inside;
  return RegionClass::Outside;
}

double region_margin(const std::array<mpq_class, 3>& sig, int prec_bits) {
  auto s = sorted_desc(sig);
  Real fb = region_boundary_f(Real::of(s[1], static_cast<mpfr_prec_t>(prec_bits)));
  return (Real::of(s[2], prec_bits) - fb).to_double();
}

std::array<mpq_class, 3> region_boundary_point(const mpq_class& x, int prec_bits) {
  mpfr_prec_t prec = prec_bits;
  Real xr = Real::of(x, prec);
  Real ex = xr.exp();
  Real den = (xr + Real::of(1L, prec)) * ex;
  std::array<mpq_class, 3> out = {(xr.cosh() / den).to_rational(),
                                  (xr * ex / den).to_rational(),
                                  (xr.sinh() / den).to_rational()};
  return out;
}

std::array<mpq_class, 3> sample_point_in_s(std::mt19937_64& rng, const mpq_class& tol,
                                           int prec_bits) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    double x = uni(rng), y = uni(rng);
    if (x > y) std::swap(x, y);
    // exact rational splits so the triple sums to 1 exactly
    mpq_class a(x), b(y);
    std::array<mpq_class, 3> s = {a, b - a, 1 - b};
    for (auto& q : s) q.canonicalize();
    if (region_classify(s, tol, prec_bits) != RegionClass::Outside) return s;
  }
  throw MapError("sample_point_in_s: rejection sampling failed");
}

}  // namespace etrails

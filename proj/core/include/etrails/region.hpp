#pragma once

#include <array>
#include <random>

#include "etrails/real.hpp"

namespace etrails {

// Boundary function of the region S: f(x) = (1-x)(1 - exp(2x/(x-1)))/2 for
// x in [0,1), continued by f(1) = 0.
Real region_boundary_f(const Real& x);

// Family f_c(x) = -(x-1)(1 + (2c-1) exp(2x/(x-1)))/2; f_0 is the boundary,
// f_{1/2}(x) = (1-x)/2.
Real region_family_f(const Real& c, const Real& x);

struct RegionConstants {
  mpq_class u;  // root of (1-x)(1+exp(2x/(x-1)))/2 = x, as a dyadic enclosure midpoint
  mpq_class w;  // u/(1-u)
};

// Bisection at the given precision; results are dyadic rationals accurate to
// ~prec bits.
RegionConstants region_constants(int prec_bits = 128);

enum class RegionClass { Inside, Boundary, Outside };

const char* region_class_name(RegionClass c);

// Sorts the signature descending to (a,b,c) and tests c against f(b) with the
// given tolerance: inside iff c >= f(b) + tol, boundary iff |c - f(b)| <= tol.
RegionClass region_classify(const std::array<mpq_class, 3>& sig, const mpq_class& tol,
                            int prec_bits = 128);

// Signed margin c - f(b) as a double, for reports.
double region_margin(const std::array<mpq_class, 3>& sig, int prec_bits = 128);

// Boundary parametrization (cosh x, x e^x, sinh x)/((x+1)e^x) for x in [0,w],
// rounded to dyadic rationals at the given precision.
std::array<mpq_class, 3> region_boundary_point(const mpq_class& x, int prec_bits = 128);

// Uniform simplex point resampled until it classifies inside (or boundary).
std::array<mpq_class, 3> sample_point_in_s(std::mt19937_64& rng, const mpq_class& tol,
                                           int prec_bits = 128);

}  // namespace etrails

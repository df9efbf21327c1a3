#include "etrails/real.hpp"

#include <algorithm>

namespace etrails {

Real::Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }

Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, o.prec());
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::of(double x, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_d(r.v_, x, MPFR_RNDN);
  return r;
}

Real Real::of(const mpq_class& q, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real Real::of(long x, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_si(r.v_, x, MPFR_RNDN);
  return r;
}

namespace {
mpfr_prec_t joint(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

Real Real::operator+(const Real& o) const {
  Real r(joint(*this, o));
  mpfr_add(r.raw(), v_, o.raw(), MPFR_RNDN);
  return r;
}

Real Real::operator-(const Real& o) const {
  Real r(joint(*this, o));
  mpfr_sub(r.raw(), v_, o.raw(), MPFR_RNDN);
  return r;
}

Real Real::operator*(const Real& o) const {
  Real r(joint(*this, o));
  mpfr_mul(r.raw(), v_, o.raw(), MPFR_RNDN);
  return r;
}

Real Real::operator/(const Real& o) const {
  Real r(joint(*this, o));
  mpfr_div(r.raw(), v_, o.raw(), MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(prec());
  mpfr_neg(r.raw(), v_, MPFR_RNDN);
  return r;
}

Real Real::exp() const {
  Real r(prec());
  mpfr_exp(r.raw(), v_, MPFR_RNDN);
  return r;
}

Real Real::cosh() const {
  Real r(prec());
  mpfr_cosh(r.raw(), v_, MPFR_RNDN);
  return r;
}

Real Real::sinh() const {
  Real r(prec());
  mpfr_sinh(r.raw(), v_, MPFR_RNDN);
  return r;
}

Real Real::abs() const {
  Real r(prec());
  mpfr_abs(r.raw(), v_, MPFR_RNDN);
  return r;
}

int Real::cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }

double Real::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

mpq_class Real::to_rational() const {
  if (mpfr_zero_p(v_)) return mpq_class(0);
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
  mpq_class q(mant);
  mpq_class two(2);
  if (e >= 0) {
    mpz_class shift = 1;
    mpz_mul_2exp(shift.get_mpz_t(), shift.get_mpz_t(), e);
    q *= mpq_class(shift);
  } else {
    mpz_class shift = 1;
    mpz_mul_2exp(shift.get_mpz_t(), shift.get_mpz_t(), -e);
    q /= mpq_class(shift);
  }
  q.canonicalize();
  return q;
}

}  // namespace etrails

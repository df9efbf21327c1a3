#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace etrails {

// Minimal RAII wrapper over mpfr_t with the operations the region math needs.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  static Real of(double x, mpfr_prec_t prec = 128);
  static Real of(const mpq_class& q, mpfr_prec_t prec = 128);
  static Real of(long x, mpfr_prec_t prec = 128);

  Real operator+(const Real& o) const;
  Real operator-(const Real& o) const;
  Real operator*(const Real& o) const;
  Real operator/(const Real& o) const;
  Real operator-() const;

  Real exp() const;
  Real cosh() const;
  Real sinh() const;
  Real abs() const;

  int cmp(const Real& o) const;
  bool operator<(const Real& o) const { return cmp(o) < 0; }
  bool operator<=(const Real& o) const { return cmp(o) <= 0; }
  bool operator>(const Real& o) const { return cmp(o) > 0; }
  bool operator>=(const Real& o) const { return cmp(o) >= 0; }

  double to_double() const;
  // Exact dyadic rational equal to the stored value.
  mpq_class to_rational() const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace etrails

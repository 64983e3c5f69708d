#pragma once

#include <mpfr.h>

#include <string>

#include "toda/numeric/rational.hpp"

namespace toda::numeric {

/// Closed interval [lo, hi] with binary floating-point (dyadic) endpoints.
/// Every operation rounds lo down and hi up, so the exact result of the
/// operation on any members of the operands stays inside.
class DyadicInterval {
 public:
  explicit DyadicInterval(mpfr_prec_t precision = 64);
  DyadicInterval(const DyadicInterval& other);
  DyadicInterval(DyadicInterval&& other) noexcept;
  DyadicInterval& operator=(const DyadicInterval& other);
  DyadicInterval& operator=(DyadicInterval&& other) noexcept;
  ~DyadicInterval();

  static DyadicInterval point(const Rational& value, mpfr_prec_t precision);
  static DyadicInterval entire(mpfr_prec_t precision);
  /// Interval [lo, hi] from two doubles; used by tests.
  static DyadicInterval from_doubles(double lo, double hi, mpfr_prec_t precision);

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const noexcept { return lo_; }
  mpfr_srcptr hi() const noexcept { return hi_; }
  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_double() const;

  bool is_bounded() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
  bool certified_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certified_negative() const { return mpfr_sgn(hi_) < 0; }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool contains(const Rational& value) const;
  /// True when this interval lies inside other.
  bool subset_of(const DyadicInterval& other) const;
  bool disjoint_from(const DyadicInterval& other) const;

  /// Upper bound on hi - lo, as a base-2 exponent: width <= 2^result.
  /// Returns a large value for unbounded intervals and a very negative one for points.
  long width_log2() const;
  /// Upper bound on max(|lo|, |hi|) as a base-2 exponent.
  long magnitude_log2() const;

  /// Intersection with another enclosure of the same real. Both must contain it.
  DyadicInterval intersect(const DyadicInterval& other) const;

  /// Midpoint printed with the given number of significant decimal digits.
  std::string mid_decimal(int digits) const;

  friend DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b);
  friend DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b);
  friend DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b);
  /// Unbounded result when b contains zero.
  friend DyadicInterval operator/(const DyadicInterval& a, const DyadicInterval& b);
  DyadicInterval operator-() const;
  /// Square root of the nonnegative part; the caller certifies the operand is >= 0.
  DyadicInterval sqrt_nonneg() const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace toda::numeric

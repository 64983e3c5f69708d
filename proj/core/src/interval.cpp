#include "toda/numeric/interval.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <memory>

namespace toda::numeric {

namespace {

struct MpfrTemp {
  explicit MpfrTemp(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~MpfrTemp() { mpfr_clear(v); }
  MpfrTemp(const MpfrTemp&) = delete;
  MpfrTemp& operator=(const MpfrTemp&) = delete;
  mpfr_t v;
};

mpfr_prec_t joint_precision(const DyadicInterval& a, const DyadicInterval& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

DyadicInterval::DyadicInterval(mpfr_prec_t precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

DyadicInterval::DyadicInterval(const DyadicInterval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

DyadicInterval::DyadicInterval(DyadicInterval&& other) noexcept {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

DyadicInterval& DyadicInterval::operator=(const DyadicInterval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

DyadicInterval& DyadicInterval::operator=(DyadicInterval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

DyadicInterval::~DyadicInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

DyadicInterval DyadicInterval::point(const Rational& value, mpfr_prec_t precision) {
  DyadicInterval out(precision);
  mpfr_set_q(out.lo_, value.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_, value.raw().get_mpq_t(), MPFR_RNDU);
  return out;
}

DyadicInterval DyadicInterval::entire(mpfr_prec_t precision) {
  DyadicInterval out(precision);
  mpfr_set_inf(out.lo_, -1);
  mpfr_set_inf(out.hi_, 1);
  return out;
}

DyadicInterval DyadicInterval::from_doubles(double lo, double hi, mpfr_prec_t precision) {
  DyadicInterval out(precision);
  mpfr_set_d(out.lo_, lo, MPFR_RNDD);
  mpfr_set_d(out.hi_, hi, MPFR_RNDU);
  return out;
}

double DyadicInterval::mid_double() const {
  if (!is_bounded()) return 0.5 * (lo_double() + hi_double());
  MpfrTemp m(precision() + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

bool DyadicInterval::contains(const Rational& value) const {
  return mpfr_cmp_q(lo_, value.raw().get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_, value.raw().get_mpq_t()) >= 0;
}

bool DyadicInterval::subset_of(const DyadicInterval& other) const {
  return mpfr_greaterequal_p(lo_, other.lo_) && mpfr_lessequal_p(hi_, other.hi_);
}

bool DyadicInterval::disjoint_from(const DyadicInterval& other) const {
  return mpfr_less_p(hi_, other.lo_) || mpfr_less_p(other.hi_, lo_);
}

long DyadicInterval::width_log2() const {
  if (!is_bounded()) return LONG_MAX / 4;
  if (is_point()) return LONG_MIN / 4;
  MpfrTemp w(precision() + 2);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  // For w in [2^(e-1), 2^e), w <= 2^e.
  return mpfr_get_exp(w.v);
}

long DyadicInterval::magnitude_log2() const {
  if (!is_bounded()) return LONG_MAX / 4;
  long e = LONG_MIN / 4;
  if (!mpfr_zero_p(lo_)) e = std::max<long>(e, mpfr_get_exp(lo_));
  if (!mpfr_zero_p(hi_)) e = std::max<long>(e, mpfr_get_exp(hi_));
  return e;
}

DyadicInterval DyadicInterval::intersect(const DyadicInterval& other) const {
  DyadicInterval out(joint_precision(*this, other));
  mpfr_max(out.lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_min(out.hi_, hi_, other.hi_, MPFR_RNDU);
  return out;
}

std::string DyadicInterval::mid_decimal(int digits) const {
  if (!is_bounded()) return "nan";
  MpfrTemp m(precision() + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  if (mpfr_zero_p(m.v)) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), m.v, MPFR_RNDN);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mantissa.empty() && mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // value = 0.mantissa * 10^exp10
  std::string out;
  if (exp10 <= 0) {
    out = "0." + std::string(static_cast<size_t>(-exp10), '0') + mantissa;
  } else if (static_cast<size_t>(exp10) >= mantissa.size()) {
    out = mantissa + std::string(static_cast<size_t>(exp10) - mantissa.size(), '0');
  } else {
    out = mantissa.substr(0, static_cast<size_t>(exp10)) + "." +
          mantissa.substr(static_cast<size_t>(exp10));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return sign + out;
}

DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
  DyadicInterval out(joint_precision(a, b));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  if (mpfr_nan_p(out.lo_) || mpfr_nan_p(out.hi_)) return DyadicInterval::entire(out.precision());
  return out;
}

DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) {
  DyadicInterval out(joint_precision(a, b));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  if (mpfr_nan_p(out.lo_) || mpfr_nan_p(out.hi_)) return DyadicInterval::entire(out.precision());
  return out;
}

DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
  const mpfr_prec_t p = joint_precision(a, b);
  if (!a.is_bounded() || !b.is_bounded()) return DyadicInterval::entire(p);
  DyadicInterval out(p);
  MpfrTemp down(p), up(p);
  bool first = true;
  for (mpfr_srcptr x : {a.lo(), a.hi()}) {
    for (mpfr_srcptr y : {b.lo(), b.hi()}) {
      mpfr_mul(down.v, x, y, MPFR_RNDD);
      mpfr_mul(up.v, x, y, MPFR_RNDU);
      if (first) {
        mpfr_set(out.lo_, down.v, MPFR_RNDD);
        mpfr_set(out.hi_, up.v, MPFR_RNDU);
        first = false;
      } else {
        mpfr_min(out.lo_, out.lo_, down.v, MPFR_RNDD);
        mpfr_max(out.hi_, out.hi_, up.v, MPFR_RNDU);
      }
    }
  }
  return out;
}

DyadicInterval operator/(const DyadicInterval& a, const DyadicInterval& b) {
  const mpfr_prec_t p = joint_precision(a, b);
  if (b.contains_zero() || !a.is_bounded() || !b.is_bounded()) return DyadicInterval::entire(p);
  DyadicInterval out(p);
  MpfrTemp down(p), up(p);
  bool first = true;
  for (mpfr_srcptr x : {a.lo(), a.hi()}) {
    for (mpfr_srcptr y : {b.lo(), b.hi()}) {
      mpfr_div(down.v, x, y, MPFR_RNDD);
      mpfr_div(up.v, x, y, MPFR_RNDU);
      if (first) {
        mpfr_set(out.lo_, down.v, MPFR_RNDD);
        mpfr_set(out.hi_, up.v, MPFR_RNDU);
        first = false;
      } else {
        mpfr_min(out.lo_, out.lo_, down.v, MPFR_RNDD);
        mpfr_max(out.hi_, out.hi_, up.v, MPFR_RNDU);
      }
    }
  }
  return out;
}

DyadicInterval DyadicInterval::operator-() const {
  DyadicInterval out(precision());
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

DyadicInterval DyadicInterval::sqrt_nonneg() const {
  DyadicInterval out(precision());
  if (mpfr_sgn(hi_) < 0) {
    mpfr_set_zero(out.lo_, 1);
    mpfr_set_zero(out.hi_, 1);
    return out;
  }
  if (mpfr_sgn(lo_) <= 0) {
    mpfr_set_zero(out.lo_, 1);
  } else {
    mpfr_sqrt(out.lo_, lo_, MPFR_RNDD);
  }
  mpfr_sqrt(out.hi_, hi_, MPFR_RNDU);
  return out;
}

}  // namespace toda::numeric

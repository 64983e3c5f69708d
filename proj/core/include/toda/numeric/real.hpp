#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "toda/numeric/interval.hpp"
#include "toda/numeric/rational.hpp"

namespace toda::numeric {

/// Working precision (bits) used when values are constructed.
inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// Knobs for certified comparison.
struct CompareOptions {
  mpfr_prec_t max_precision = 256;
  /// Equality threshold tau_eq = 2^eq_threshold_log2.
  long eq_threshold_log2 = -80;
};

enum class Ordering { LT, EQ, GT };

Ordering reverse(Ordering o);
const char* to_string(Ordering o);

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

enum class ExprOp { Leaf, Add, Sub, Mul, Div, Neg, Sqrt };

/// Immutable expression tree node. Leaves hold a rational; Sqrt nodes are only
/// built over radicands certified positive.
struct ExprNode {
  ExprOp op = ExprOp::Leaf;
  Rational value;
  ExprPtr lhs;
  ExprPtr rhs;
};

/// A real number given by a radical expression over the rationals together
/// with a certified enclosure. Rational values take an exact fast path and
/// never touch interval arithmetic for their own arithmetic.
class RealScalar {
 public:
  RealScalar() : RealScalar(Rational(0)) {}
  RealScalar(const Rational& value);  // NOLINT(google-explicit-constructor)
  RealScalar(long value) : RealScalar(Rational(value)) {}  // NOLINT(google-explicit-constructor)

  bool is_rational() const noexcept { return exact_.has_value(); }
  const std::optional<Rational>& exact() const noexcept { return exact_; }
  const DyadicInterval& enclosure() const noexcept { return enclosure_; }
  mpfr_prec_t precision() const noexcept { return enclosure_.precision(); }
  const ExprPtr& expr() const noexcept { return expr_; }

  /// Same value with an enclosure of width <= 2^(2 - bits) * max(1, |value|),
  /// nested inside the current one. Lower precisions return *this.
  RealScalar refine(mpfr_prec_t bits) const;

  double approx() const { return enclosure_.mid_double(); }
  /// Midpoint rounded to the given number of significant digits.
  std::string decimal(int digits = 30) const;

  /// Infix rendering, e.g. "5 - sqrt(13)".
  std::string to_string() const;
  /// Prefix rendering, e.g. "(- 5 (sqrt 13))". Parsed back by parse_prefix.
  std::string to_prefix() const;
  static RealScalar parse_prefix(std::string_view text);

  friend RealScalar operator+(const RealScalar& a, const RealScalar& b);
  friend RealScalar operator-(const RealScalar& a, const RealScalar& b);
  friend RealScalar operator*(const RealScalar& a, const RealScalar& b);
  /// Throws DivisionByZero for an exact zero divisor, AmbiguousSign when the
  /// divisor cannot be separated from zero at the default maximum precision.
  friend RealScalar operator/(const RealScalar& a, const RealScalar& b);
  RealScalar operator-() const;

  friend RealScalar sqrt(const RealScalar& a);

 private:
  RealScalar(ExprPtr expr, DyadicInterval enclosure, std::optional<Rational> exact);
  static RealScalar from_node(ExprPtr node, DyadicInterval enclosure);

  ExprPtr expr_;
  DyadicInterval enclosure_;
  std::optional<Rational> exact_;
};

/// Square root. Exact for rational perfect squares; square factors of a
/// rational radicand are pulled out (sqrt(52) becomes 2*sqrt(13)).
/// Throws NegativeRadicand or AmbiguousSign.
RealScalar sqrt(const RealScalar& a);

/// Certified comparison. LT/GT are proofs; EQ means the difference could not be
/// separated from zero and its enclosure lies within the equality threshold
/// (or, as a fallback, could not be separated at all).
Ordering compare(const RealScalar& a, const RealScalar& b, const CompareOptions& options = {});

/// Verdict plus how it was reached. `certified` is false when the difference
/// was never separated from zero; `within_threshold` then tells whether its
/// enclosure lies inside [-tau_eq, tau_eq].
struct Comparison {
  Ordering verdict;
  bool certified;
  bool within_threshold;
};
Comparison compare_detailed(const RealScalar& a, const RealScalar& b,
                            const CompareOptions& options = {});

/// Sign of a value as an Ordering against zero.
Ordering sign(const RealScalar& a, const CompareOptions& options = {});

/// Interval evaluation of an expression at the given precision.
DyadicInterval evaluate(const ExprPtr& expr, mpfr_prec_t bits);

}  // namespace toda::numeric

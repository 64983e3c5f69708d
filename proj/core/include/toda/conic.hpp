#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "toda/numeric/real.hpp"

namespace toda {

using numeric::CompareOptions;
using numeric::Rational;
using numeric::RealScalar;

/// Coordinate held fixed by a line: Sigma1 means the line sigma1 = const.
enum class Axis { Sigma1, Sigma2 };

const char* to_string(Axis axis);

struct SeedOrigin {
  int index = 0;  // 0..5 in the canonical seed order
};

struct IntersectionOrigin {
  static constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();
  std::size_t parent = kNoParent;
  Axis axis = Axis::Sigma1;
  unsigned shift = 0;  // line is parent coordinate + 2 * shift
};

using Provenance = std::variant<SeedOrigin, IntersectionOrigin>;

/// "seed 3" or "sigma1 = #4 + 2*1".
std::string describe(const Provenance& provenance);
/// Inverse of describe; throws ParseError.
Provenance parse_provenance(const std::string& text);

struct SigmaPoint {
  RealScalar s1;
  RealScalar s2;
  Provenance provenance = IntersectionOrigin{};
};

/// sigma1^2 - sigma1 sigma2 + sigma2^2 = 2 mu1 sigma1 + 2 mu2 sigma2 in the first quadrant.
class Conic {
 public:
  /// Throws InvalidArgument unless both mu are positive.
  Conic(Rational mu1, Rational mu2);
  /// mu_i = 1 + gamma_i.
  static Conic from_gamma(const Rational& gamma1, const Rational& gamma2);

  const Rational& mu1() const noexcept { return mu1_; }
  const Rational& mu2() const noexcept { return mu2_; }
  const Rational& mu(Axis axis) const noexcept { return axis == Axis::Sigma1 ? mu1_ : mu2_; }
  /// The conic with mu1 and mu2 exchanged (mirror image in the diagonal).
  Conic swapped() const { return Conic(mu2_, mu1_); }

 private:
  Rational mu1_;
  Rational mu2_;
};

/// Q(s) = s1^2 - s1 s2 + s2^2 - 2 mu1 s1 - 2 mu2 s2.
RealScalar residual(const Conic& conic, const RealScalar& s1, const RealScalar& s2);
RealScalar residual(const Conic& conic, const SigmaPoint& point);

/// The six canonical members, all exact:
/// (0,0), (2mu1,0), (0,2mu2), (2mu1,2(mu1+mu2)), (2(mu1+mu2),2mu2), (2(mu1+mu2),2(mu1+mu2)).
std::vector<SigmaPoint> seed_points(const Conic& conic);

/// Points of the conic on the line {axis coordinate = value}, ordered by the
/// free coordinate. Negative roots are dropped; a tangent line gives one point.
/// Throws InvalidArgument for a negative value and AmbiguousSign when a sign
/// needed for the decision cannot be certified.
std::vector<SigmaPoint> intersect_line(const Conic& conic, Axis axis, const RealScalar& value,
                                       const CompareOptions& options = {},
                                       Provenance provenance = IntersectionOrigin{});

struct BoundingBox {
  RealScalar s1_max;
  RealScalar s2_max;
};

/// Exact maxima of each coordinate over the conic.
BoundingBox bounding_box(const Conic& conic);

}  // namespace toda

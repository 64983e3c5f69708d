#include "toda/conic.hpp"

#include <regex>

#include "toda/errors.hpp"

namespace toda {

using numeric::Ordering;

const char* to_string(Axis axis) { return axis == Axis::Sigma1 ? "sigma1" : "sigma2"; }

std::string describe(const Provenance& provenance) {
  if (const auto* seed = std::get_if<SeedOrigin>(&provenance)) {
    return "seed " + std::to_string(seed->index);
  }
  const auto& cut = std::get<IntersectionOrigin>(provenance);
  const std::string parent =
      cut.parent == IntersectionOrigin::kNoParent ? std::string("?") : std::to_string(cut.parent);
  return std::string(to_string(cut.axis)) + " = #" + parent + " + 2*" + std::to_string(cut.shift);
}

Provenance parse_provenance(const std::string& text) {
  static const std::regex seed_re(R"(seed ([0-5]))");
  static const std::regex cut_re(R"((sigma1|sigma2) = #(\d+|\?) \+ 2\*(\d+))");
  std::smatch m;
  if (std::regex_match(text, m, seed_re)) return SeedOrigin{std::stoi(m[1].str())};
  if (std::regex_match(text, m, cut_re)) {
    IntersectionOrigin cut;
    cut.axis = m[1].str() == "sigma1" ? Axis::Sigma1 : Axis::Sigma2;
    if (m[2].str() != "?") cut.parent = std::stoul(m[2].str());
    cut.shift = static_cast<unsigned>(std::stoul(m[3].str()));
    return cut;
  }
  throw ParseError("bad provenance '" + text + "'");
}

Conic::Conic(Rational mu1, Rational mu2) : mu1_(std::move(mu1)), mu2_(std::move(mu2)) {
  if (mu1_.sign() <= 0 || mu2_.sign() <= 0) {
    throw InvalidArgument("mu1 and mu2 must be positive (gamma > -1), got " + mu1_.to_string() +
                          ", " + mu2_.to_string());
  }
}

Conic Conic::from_gamma(const Rational& gamma1, const Rational& gamma2) {
  return Conic(gamma1 + Rational(1), gamma2 + Rational(1));
}

RealScalar residual(const Conic& conic, const RealScalar& s1, const RealScalar& s2) {
  const RealScalar two_mu1(Rational(2) * conic.mu1());
  const RealScalar two_mu2(Rational(2) * conic.mu2());
  return s1 * s1 - s1 * s2 + s2 * s2 - two_mu1 * s1 - two_mu2 * s2;
}

RealScalar residual(const Conic& conic, const SigmaPoint& point) {
  return residual(conic, point.s1, point.s2);
}

std::vector<SigmaPoint> seed_points(const Conic& conic) {
  const Rational two(2);
  const Rational a = two * conic.mu1();
  const Rational b = two * conic.mu2();
  const Rational c = two * (conic.mu1() + conic.mu2());
  const Rational zero(0);
  const std::pair<Rational, Rational> coords[] = {{zero, zero}, {a, zero}, {zero, b},
                                                  {a, c},       {c, b},    {c, c}};
  std::vector<SigmaPoint> seeds;
  seeds.reserve(6);
  for (int i = 0; i < 6; ++i) {
    seeds.push_back({RealScalar(coords[i].first), RealScalar(coords[i].second), SeedOrigin{i}});
  }
  return seeds;
}

std::vector<SigmaPoint> intersect_line(const Conic& conic, Axis axis, const RealScalar& value,
                                       const CompareOptions& options, Provenance provenance) {
  if (numeric::sign(value, options) == Ordering::LT) {
    throw InvalidArgument("line coordinate must be nonnegative: " + value.to_string());
  }
  const Axis free_axis = axis == Axis::Sigma1 ? Axis::Sigma2 : Axis::Sigma1;
  const RealScalar mu_fixed(conic.mu(axis));
  const RealScalar mu_free(conic.mu(free_axis));

  // t^2 - 2*half*t + c = 0 with half = v/2 + mu_free and c = v^2 - 2 mu_fixed v.
  const RealScalar half = value * RealScalar(Rational(1, 2)) + mu_free;
  const RealScalar product = value * value - RealScalar(2) * mu_fixed * value;
  const RealScalar quarter_disc = half * half - product;

  auto make_point = [&](const RealScalar& t) {
    return axis == Axis::Sigma1 ? SigmaPoint{value, t, provenance}
                                : SigmaPoint{t, value, provenance};
  };

  std::vector<SigmaPoint> out;
  const Ordering disc_sign = numeric::sign(quarter_disc, options);
  if (disc_sign == Ordering::LT) return out;
  if (disc_sign == Ordering::EQ) {
    // Tangent line; half > 0 since v >= 0 and mu > 0.
    out.push_back(make_point(half));
    return out;
  }

  const RealScalar root = numeric::sqrt(quarter_disc);
  // The roots multiply to `product` and the larger one is positive, so the
  // smaller root has the sign of `product`.
  switch (numeric::sign(product, options)) {
    case Ordering::GT:
      out.push_back(make_point(half - root));
      break;
    case Ordering::EQ:
      if (!product.is_rational()) {
        throw AmbiguousSign("cannot decide whether root " + (half - root).to_string() +
                            " on " + to_string(axis) + " = " + value.to_string() +
                            " is zero");
      }
      out.push_back(make_point(RealScalar(0)));
      break;
    case Ordering::LT:
      break;
  }
  out.push_back(make_point(half + root));
  return out;
}

BoundingBox bounding_box(const Conic& conic) {
  const Rational& m1 = conic.mu1();
  const Rational& m2 = conic.mu2();
  const RealScalar root = numeric::sqrt(RealScalar(m1 * m1 + m1 * m2 + m2 * m2));
  const RealScalar four_thirds(Rational(4, 3));
  const Rational two_thirds(2, 3);
  const Rational c1 = Rational(4, 3) * m1 + two_thirds * m2;
  const Rational c2 = two_thirds * m1 + Rational(4, 3) * m2;
  return {RealScalar(c1) + four_thirds * root, RealScalar(c2) + four_thirds * root};
}

}  // namespace toda

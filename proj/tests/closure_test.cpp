#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "toda/closure.hpp"
#include "toda/errors.hpp"

using namespace toda;
using numeric::compare;
using numeric::Ordering;

namespace {

RealScalar r(long p, long q = 1) { return RealScalar(Rational(p, q)); }

SigmaPoint pt(const RealScalar& a, const RealScalar& b) { return SigmaPoint{a, b, SeedOrigin{0}}; }

bool same_points(const SigmaSet& a, const SigmaSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (compare(a.points[i].s1, b.points[i].s1) != Ordering::EQ) return false;
    if (compare(a.points[i].s2, b.points[i].s2) != Ordering::EQ) return false;
  }
  return true;
}

bool matches_oracle(const SigmaSet& set, const std::vector<std::pair<double, double>>& pairs) {
  if (set.size() != pairs.size()) return false;
  std::vector<bool> used(pairs.size(), false);
  for (const auto& p : set.points) {
    bool found = false;
    for (std::size_t k = 0; k < pairs.size() && !found; ++k) {
      if (!used[k] && std::abs(p.s1.approx() - pairs[k].first) <= 1e-9 &&
          std::abs(p.s2.approx() - pairs[k].second) <= 1e-9) {
        used[k] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

Rational random_mu(std::mt19937& rng) {
  std::uniform_int_distribution<long> den(1, 20);
  const long q = den(rng);
  std::uniform_int_distribution<long> num(1, 3 * q);
  return Rational(num(rng), q);
}

}  // namespace

TEST_CASE("upper_right examples") {
  CHECK(upper_right(pt(r(2), r(0)), pt(r(2), r(4))));
  CHECK_FALSE(upper_right(pt(r(2), r(4)), pt(r(4), r(2))));
  CHECK(upper_right(pt(r(4), r(0)), pt(r(6), r(5) - sqrt(r(13)))));
}

TEST_CASE("enumerate examples") {
  const SigmaSet s11 = enumerate(Conic(1, 1));
  REQUIRE(s11.size() == 6);
  const long expected[6][2] = {{0, 0}, {0, 2}, {2, 0}, {2, 4}, {4, 2}, {4, 4}};
  for (std::size_t i = 0; i < 6; ++i) {
    REQUIRE(s11.points[i].s1.is_rational());
    REQUIRE(s11.points[i].s2.is_rational());
    CHECK(*s11.points[i].s1.exact() == Rational(expected[i][0]));
    CHECK(*s11.points[i].s2.exact() == Rational(expected[i][1]));
  }

  const SigmaSet s22 = enumerate(Conic(2, 2));
  CHECK(s22.size() == 20);
  for (const auto& seed : seed_points(Conic(2, 2))) CHECK(is_member(s22, seed.s1, seed.s2));
  for (const auto& p : s22.points) {
    CHECK(residual(s22.conic, p).refine(256).enclosure().contains_zero());
  }

  CHECK(enumerate(Conic(Rational(3, 10), Rational(3, 10))).size() == 6);
}

TEST_CASE("is_member examples") {
  const SigmaSet s11 = enumerate(Conic(1, 1));
  CHECK(is_member(s11, r(4), r(4)));
  CHECK_FALSE(is_member(s11, r(6), r(0)));
  const SigmaSet s22 = enumerate(Conic(2, 2));
  CHECK(is_member(s22, r(6), r(5) + sqrt(r(13))));
  CHECK(is_member(s22, r(6), r(5) - sqrt(r(13))));
}

TEST_CASE("generation log records the walk") {
  const SigmaSet s22 = enumerate(Conic(2, 2));
  std::size_t seeds = 0;
  for (std::size_t i = 0; i < s22.size(); ++i) {
    const auto& prov = s22.points[i].provenance;
    if (std::holds_alternative<SeedOrigin>(prov)) {
      ++seeds;
      continue;
    }
    const auto& o = std::get<IntersectionOrigin>(prov);
    REQUIRE(o.parent < s22.size());
    const SigmaPoint& parent = s22.points[o.parent];
    CHECK(upper_right(parent, s22.points[i]));
    const RealScalar line = (o.axis == Axis::Sigma1 ? parent.s1 : parent.s2) + r(2 * o.shift);
    const RealScalar fixed = o.axis == Axis::Sigma1 ? s22.points[i].s1 : s22.points[i].s2;
    CHECK(compare(line, fixed) == Ordering::EQ);
  }
  CHECK(seeds == 6);
  CHECK(s22.generation_log.size() == s22.size() - 6);
  for (const auto& rec : s22.generation_log) {
    CHECK(rec.child < s22.size());
    CHECK(rec.parent < s22.size());
  }
}

TEST_CASE("N = 0 lines change the (2,2) count") {
  ClosureOptions options;
  options.min_shift = 0;
  CHECK(enumerate(Conic(2, 2), options).size() == 24);
  CHECK(float_oracle_enumerate(2, 2, 0).size() == 24);
  CHECK(enumerate(Conic(1, 1), options).size() == 6);
}

TEST_CASE("budget exhaustion") {
  ClosureOptions options;
  options.budget = 1;
  CHECK_THROWS_AS(enumerate(Conic(2, 2), options), ClosureBudgetExceeded);
}

TEST_CASE("float oracle examples") {
  CHECK(matches_oracle(enumerate(Conic(1, 1)), float_oracle_enumerate(1, 1)));
  CHECK(float_oracle_enumerate(2, 2).size() == 20);
  const auto a = float_oracle_enumerate(1, 2);
  auto b = float_oracle_enumerate(2, 1);
  for (auto& p : b) std::swap(p.first, p.second);
  std::sort(b.begin(), b.end());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i].first - b[i].first) <= 1e-9);
    CHECK(std::abs(a[i].second - b[i].second) <= 1e-9);
  }
}

TEST_CASE("closure properties over random mu") {
  std::mt19937 rng(2718);
  for (int i = 0; i < 50; ++i) {
    const Rational mu1 = random_mu(rng);
    const Rational mu2 = random_mu(rng);
    CAPTURE(mu1.to_string());
    CAPTURE(mu2.to_string());
    const Conic c(mu1, mu2);
    const SigmaSet set = enumerate(c);

    for (const auto& seed : seed_points(c)) CHECK(is_member(set, seed.s1, seed.s2));

    const BoundingBox box = bounding_box(c);
    for (const auto& p : set.points) {
      CHECK(compare(p.s1, box.s1_max) != Ordering::GT);
      CHECK(compare(p.s2, box.s2_max) != Ordering::GT);
      CHECK(compare(p.s1, r(0)) != Ordering::LT);
      CHECK(compare(p.s2, r(0)) != Ordering::LT);
    }

    for (std::size_t k = 1; k < set.size(); ++k) {
      const auto c1 = compare(set.points[k - 1].s1, set.points[k].s1);
      const bool ordered =
          c1 == Ordering::LT ||
          (c1 == Ordering::EQ &&
           compare(set.points[k - 1].s2, set.points[k].s2) == Ordering::LT);
      CHECK(ordered);
    }

    const SigmaSet mirror = enumerate(c.swapped());
    REQUIRE(mirror.size() == set.size());
    for (const auto& p : set.points) CHECK(is_member(mirror, p.s2, p.s1));

    const SigmaSet again = close(c, set.points);
    CHECK(same_points(again, set));

    CHECK(matches_oracle(set, float_oracle_enumerate(mu1.to_double(), mu2.to_double())));
  }
}

TEST_CASE("determinism") {
  const SigmaSet a = enumerate(Conic(Rational(7, 5), Rational(9, 4)));
  const SigmaSet b = enumerate(Conic(Rational(7, 5), Rational(9, 4)));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.points[i].s1.to_prefix() == b.points[i].s1.to_prefix());
    CHECK(a.points[i].s2.to_prefix() == b.points[i].s2.to_prefix());
    CHECK(describe(a.points[i].provenance) == describe(b.points[i].provenance));
  }
  REQUIRE(a.generation_log.size() == b.generation_log.size());
  for (std::size_t i = 0; i < a.generation_log.size(); ++i) {
    CHECK(a.generation_log[i].parent == b.generation_log[i].parent);
    CHECK(a.generation_log[i].child == b.generation_log[i].child);
    CHECK(a.generation_log[i].shift == b.generation_log[i].shift);
    CHECK(a.generation_log[i].axis == b.generation_log[i].axis);
  }
}

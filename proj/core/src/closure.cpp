#include "toda/closure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "toda/errors.hpp"

namespace toda {

using numeric::Ordering;

namespace {

bool same_point(const SigmaPoint& a, const SigmaPoint& b, const CompareOptions& options) {
  if (a.s1.enclosure().disjoint_from(b.s1.enclosure()) ||
      a.s2.enclosure().disjoint_from(b.s2.enclosure())) {
    return false;
  }
  return numeric::compare(a.s1, b.s1, options) == Ordering::EQ &&
         numeric::compare(a.s2, b.s2, options) == Ordering::EQ;
}

bool find_point(const std::vector<SigmaPoint>& points, const SigmaPoint& q,
                const CompareOptions& options) {
  return std::any_of(points.begin(), points.end(),
                     [&](const SigmaPoint& p) { return same_point(p, q, options); });
}

/// Sorts by (s1, s2) and rewrites every stored index to the new positions.
void canonicalize(SigmaSet& set, const CompareOptions& options) {
  std::vector<std::size_t> order(set.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto c1 = numeric::compare(set.points[i].s1, set.points[j].s1, options);
    if (c1 != Ordering::EQ) return c1 == Ordering::LT;
    return numeric::compare(set.points[i].s2, set.points[j].s2, options) == Ordering::LT;
  });
  std::vector<std::size_t> position(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;

  std::vector<SigmaPoint> sorted;
  sorted.reserve(order.size());
  for (std::size_t old : order) {
    SigmaPoint p = set.points[old];
    if (auto* cut = std::get_if<IntersectionOrigin>(&p.provenance);
        cut && cut->parent != IntersectionOrigin::kNoParent) {
      cut->parent = position[cut->parent];
    }
    sorted.push_back(std::move(p));
  }
  set.points = std::move(sorted);
  for (auto& record : set.generation_log) {
    record.parent = position[record.parent];
    record.child = position[record.child];
  }
}

}  // namespace

bool upper_right(const SigmaPoint& p, const SigmaPoint& q, const CompareOptions& options) {
  return numeric::compare(q.s1, p.s1, options) != Ordering::LT &&
         numeric::compare(q.s2, p.s2, options) != Ordering::LT;
}

SigmaSet close(const Conic& conic, std::vector<SigmaPoint> initial, const ClosureOptions& options) {
  if (options.budget == 0) throw InvalidArgument("closure budget must be at least 1");
  SigmaSet set{conic, {}, {}};
  for (auto& p : initial) {
    if (!find_point(set.points, p, options.compare)) set.points.push_back(std::move(p));
  }
  // Parent indices of incoming points refer to a different set.
  for (auto& p : set.points) {
    if (auto* cut = std::get_if<IntersectionOrigin>(&p.provenance)) {
      cut->parent = IntersectionOrigin::kNoParent;
    }
  }

  const BoundingBox box = bounding_box(conic);
  std::deque<std::size_t> worklist(set.points.size());
  std::iota(worklist.begin(), worklist.end(), 0);
  std::size_t steps = 0;

  while (!worklist.empty()) {
    if (++steps > options.budget) {
      throw ClosureBudgetExceeded("closure did not reach a fixed point within " +
                                  std::to_string(options.budget) + " steps (" +
                                  std::to_string(set.points.size()) + " points so far)");
    }
    const std::size_t parent = worklist.front();
    worklist.pop_front();
    for (Axis axis : {Axis::Sigma1, Axis::Sigma2}) {
      const SigmaPoint origin = set.points[parent];
      const RealScalar& base = axis == Axis::Sigma1 ? origin.s1 : origin.s2;
      const RealScalar& limit = axis == Axis::Sigma1 ? box.s1_max : box.s2_max;
      for (unsigned shift = options.min_shift;; ++shift) {
        const RealScalar line = base + RealScalar(static_cast<long>(2 * shift));
        if (numeric::compare(line, limit, options.compare) == Ordering::GT) break;
        const IntersectionOrigin how{parent, axis, shift};
        for (auto& q : intersect_line(conic, axis, line, options.compare, how)) {
          if (!upper_right(origin, q, options.compare)) continue;
          if (find_point(set.points, q, options.compare)) continue;
          set.generation_log.push_back({parent, axis, shift, set.points.size()});
          worklist.push_back(set.points.size());
          set.points.push_back(std::move(q));
        }
      }
    }
  }
  canonicalize(set, options.compare);
  return set;
}

SigmaSet enumerate(const Conic& conic, const ClosureOptions& options) {
  return close(conic, seed_points(conic), options);
}

bool is_member(const SigmaSet& set, const RealScalar& s1, const RealScalar& s2,
               const CompareOptions& options) {
  return find_point(set.points, SigmaPoint{s1, s2, IntersectionOrigin{}}, options);
}

std::vector<std::pair<double, double>> float_oracle_enumerate(double mu1, double mu2,
                                                              unsigned min_shift) {
  constexpr double kTol = 1e-9;
  using Pair = std::pair<double, double>;
  const double root = std::sqrt(mu1 * mu1 + mu1 * mu2 + mu2 * mu2);
  const double max1 = 4.0 / 3.0 * mu1 + 2.0 / 3.0 * mu2 + 4.0 / 3.0 * root;
  const double max2 = 2.0 / 3.0 * mu1 + 4.0 / 3.0 * mu2 + 4.0 / 3.0 * root;

  std::vector<Pair> points = {{0, 0},
                              {2 * mu1, 0},
                              {0, 2 * mu2},
                              {2 * mu1, 2 * (mu1 + mu2)},
                              {2 * (mu1 + mu2), 2 * mu2},
                              {2 * (mu1 + mu2), 2 * (mu1 + mu2)}};
  auto known = [&](const Pair& q) {
    return std::any_of(points.begin(), points.end(), [&](const Pair& p) {
      return std::abs(p.first - q.first) <= kTol && std::abs(p.second - q.second) <= kTol;
    });
  };
  // Roots t of t^2 - (v + 2 mf) t + (v^2 - 2 ma v) = 0 with t >= 0.
  auto roots = [&](double v, double ma, double mf) {
    std::vector<double> out;
    const double b = v + 2 * mf;
    const double c = v * v - 2 * ma * v;
    const double disc = b * b - 4 * c;
    if (disc < -kTol) return out;
    if (std::abs(disc) <= kTol) {
      out.push_back(b / 2);
      return out;
    }
    const double s = std::sqrt(disc);
    const double small = 2 * c / (b + s);
    if (small >= -kTol) out.push_back(std::max(small, 0.0));
    out.push_back((b + s) / 2);
    return out;
  };

  std::deque<std::size_t> worklist = {0, 1, 2, 3, 4, 5};
  while (!worklist.empty()) {
    const Pair p = points[worklist.front()];
    worklist.pop_front();
    for (unsigned n = min_shift; p.first + 2.0 * n <= max1 + kTol; ++n) {
      const double v = p.first + 2.0 * n;
      for (double t : roots(v, mu1, mu2)) {
        const Pair q{v, t};
        if (t >= p.second - kTol && !known(q)) {
          points.push_back(q);
          worklist.push_back(points.size() - 1);
        }
      }
    }
    for (unsigned n = min_shift; p.second + 2.0 * n <= max2 + kTol; ++n) {
      const double v = p.second + 2.0 * n;
      for (double t : roots(v, mu2, mu1)) {
        const Pair q{t, v};
        if (t >= p.first - kTol && !known(q)) {
          points.push_back(q);
          worklist.push_back(points.size() - 1);
        }
      }
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

}  // namespace toda

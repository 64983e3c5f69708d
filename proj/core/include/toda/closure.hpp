#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "toda/conic.hpp"

namespace toda {

struct ClosureOptions {
  /// Maximum number of members processed from the worklist.
  std::size_t budget = 1'000'000;
  /// Smallest N in the line families coordinate + 2N.
  unsigned min_shift = 1;
  CompareOptions compare;
};

struct GenerationRecord {
  std::size_t parent;
  Axis axis;
  unsigned shift;
  std::size_t child;
};

/// Closed, deduplicated, canonically ordered set of conic points. Indices in
/// provenance and the generation log refer to positions in `points`.
struct SigmaSet {
  Conic conic;
  std::vector<SigmaPoint> points;
  std::vector<GenerationRecord> generation_log;

  std::size_t size() const noexcept { return points.size(); }
};

/// True iff q lies in the closed upper-right quadrant of p (EQ counts as >=).
bool upper_right(const SigmaPoint& p, const SigmaPoint& q, const CompareOptions& options = {});

/// Closure of the six seed points under the line-intersection rule.
/// Throws ClosureBudgetExceeded or propagates AmbiguousSign.
SigmaSet enumerate(const Conic& conic, const ClosureOptions& options = {});

/// Closure of an arbitrary starting set (deduplicated first).
SigmaSet close(const Conic& conic, std::vector<SigmaPoint> initial,
               const ClosureOptions& options = {});

bool is_member(const SigmaSet& set, const RealScalar& s1, const RealScalar& s2,
               const CompareOptions& options = {});

/// The same closure in hardware doubles with absolute tolerance 1e-9.
/// Cross-check only; returns pairs sorted lexicographically.
std::vector<std::pair<double, double>> float_oracle_enumerate(double mu1, double mu2,
                                                              unsigned min_shift = 1);

}  // namespace toda

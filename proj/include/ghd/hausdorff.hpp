#pragma once

#include "ghd/metric_space.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ghd {

/// |xA|: distance from point x to the nearest point of A.
template <typename Scalar, Axioms A>
Scalar point_to_set(const FiniteSpace<Scalar, A>& space, Index x, const Subset& set) {
  require_subset_of(space, set);
  if (x < 0 || x >= space.size()) throw std::out_of_range("point index out of range");
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Index a : set.indices()) best = std::min(best, space(x, a));
  return best;
}

/// d(A,B) = max over a in A of |aB|. Not symmetric.
template <typename Scalar, Axioms A>
Scalar one_sided(const FiniteSpace<Scalar, A>& space, const Subset& from, const Subset& to) {
  require_subset_of(space, from);
  Scalar worst = 0;
  for (Index a : from.indices()) worst = std::max(worst, point_to_set(space, a, to));
  return worst;
}

template <typename Scalar, Axioms A>
Scalar hausdorff(const FiniteSpace<Scalar, A>& space, const Subset& a, const Subset& b) {
  return std::max(one_sided(space, a, b), one_sided(space, b, a));
}

/// Hausdorff distance between the images of two complementary parts of a
/// glued pseudometric space in its zero-distance quotient. Identifying
/// points at distance zero leaves every sup-inf value unchanged, so the
/// formula is evaluated on the pseudometric directly.
template <typename Scalar>
Scalar hausdorff_between_parts(const PseudoMetricSpace<Scalar>& glued, const Subset& part_x, const Subset& part_y) {
  require_subset_of(glued, part_x);
  require_subset_of(glued, part_y);
  if (part_x.size() + part_y.size() != glued.size())
    throw std::invalid_argument("parts must partition the glued space");
  for (Index i : part_x.indices())
    if (part_y.contains(i)) throw std::invalid_argument("parts must be disjoint");
  return hausdorff(glued, part_x, part_y);
}

}  // namespace ghd

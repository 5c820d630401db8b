#pragma once

#include "ghd/correspondence.hpp"
#include "ghd/hausdorff.hpp"
#include "ghd/metric_space.hpp"
#include "ghd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace ghd {

/// Pseudometric on the disjoint union X ⊔ Y (X indices first) extending both
/// metrics through a correspondence.
template <typename Scalar>
struct Gluing {
  PseudoMetricSpace<Scalar> space;
  Correspondence correspondence;
  Scalar half_distortion;
  Index left_size;

  Subset left_part() const { return Subset::range(space.size(), 0, left_size); }
  Subset right_part() const { return Subset::range(space.size(), left_size, space.size()); }
};

/// Common metric space Z with isometric copies of X and Y.
template <typename Scalar>
struct Realization {
  MetricSpace<Scalar> Z;
  std::vector<Index> embed_x;
  std::vector<Index> embed_y;
  /// Hausdorff distance between the two images in Z.
  Scalar achieved;
  Correspondence witness;
};

/// Cross distances rho(x,y) = min over (x',y') in R of |xx'| + |yy'| + dis(R)/2.
/// Point labels are prefixed "x:" and "y:".
template <typename Scalar>
Gluing<Scalar> glue(const MetricSpace<Scalar>& X, const MetricSpace<Scalar>& Y, const Correspondence& R,
                    double tol = kMetricTolerance) {
  require_relation_between(X, Y, R);
  const Index n = X.size();
  const Index m = Y.size();
  const Scalar half = Scalar(0.5) * distortion(X, Y, R);

  DistanceMatrix<Scalar> d(n + m, n + m);
  d.topLeftCorner(n, n) = X.dist();
  d.bottomRightCorner(m, m) = Y.dist();
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < m; ++y) {
      Scalar v = std::numeric_limits<Scalar>::infinity();
      for (const auto& [xp, yp] : R.pairs()) v = std::min(v, X(x, xp) + Y(y, yp) + half);
      d(x, n + y) = v;
      d(n + y, x) = v;
    }
  }

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n + m));
  for (const auto& l : X.labels()) labels.push_back("x:" + l);
  for (const auto& l : Y.labels()) labels.push_back("y:" + l);

  return {PseudoMetricSpace<Scalar>(std::move(d), std::move(labels), tol), R, half, n};
}

/// Realization through an arbitrary correspondence: glue, then collapse
/// zero distances. Embeddings are the quotient projection on each block.
template <typename Scalar>
Realization<Scalar> realize_with(const MetricSpace<Scalar>& X, const MetricSpace<Scalar>& Y, const Correspondence& R,
                                 double tol = kMetricTolerance) {
  const auto gluing = glue(X, Y, R, tol);
  auto q = quotient(gluing.space);
  const auto n = static_cast<std::ptrdiff_t>(X.size());
  std::vector<Index> ex(q.projection.begin(), q.projection.begin() + n);
  std::vector<Index> ey(q.projection.begin() + n, q.projection.end());
  const Scalar achieved = hausdorff(q.space, Subset(q.space.size(), ex), Subset(q.space.size(), ey));
  return {std::move(q.space), std::move(ex), std::move(ey), achieved, R};
}

/// Realization at the Gromov-Hausdorff distance, through the solver's
/// optimal correspondence. Throws NotExact when optimality is not certified.
template <typename Scalar>
Realization<Scalar> realize(const MetricSpace<Scalar>& X, const MetricSpace<Scalar>& Y, SolverOptions options = {},
                            double tol = kMetricTolerance) {
  auto result = gh_exact(X, Y, options);
  if (!result.exact) throw NotExact("realize: node budget exhausted before optimality was certified");
  return realize_with(X, Y, result.witness, tol);
}

template <typename Scalar>
struct RealizationReport {
  bool z_is_metric = false;
  bool embed_x_isometric = false;
  bool embed_y_isometric = false;
  bool images_cover_z = false;
  bool hausdorff_matches = false;
  bool gh_matches = false;
  bool gh_exact = false;
  Scalar recomputed_hausdorff = 0;
  Scalar recomputed_gh = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

namespace detail {

template <typename Scalar>
bool embeds_exactly(const MetricSpace<Scalar>& source, const DistanceMatrix<Scalar>& z, const std::vector<Index>& map) {
  if (static_cast<Index>(map.size()) != source.size()) return false;
  for (Index v : map)
    if (v < 0 || v >= z.rows()) return false;
  for (Index i = 0; i < source.size(); ++i)
    for (Index j = 0; j < source.size(); ++j)
      if (z(map[i], map[j]) != source(i, j)) return false;
  return true;
}

}  // namespace detail

/// Re-checks a realization from scratch: Z is a metric, both embeddings
/// preserve distances exactly, the images cover Z, the recorded Hausdorff
/// distance matches a recomputation, and it equals an independently solved
/// GH distance (to `tol`).
template <typename Scalar>
RealizationReport<Scalar> verify_realization(const Realization<Scalar>& r, const MetricSpace<Scalar>& X,
                                             const MetricSpace<Scalar>& Y, SolverOptions options = {},
                                             double tol = 1e-12) {
  RealizationReport<Scalar> rep;
  const auto& z = r.Z.dist();

  if (auto v = find_violation(z, Axioms::metric)) {
    rep.violations.push_back("Z is not a metric: " + v->describe());
  } else {
    rep.z_is_metric = true;
  }

  rep.embed_x_isometric = detail::embeds_exactly(X, z, r.embed_x);
  if (!rep.embed_x_isometric) rep.violations.push_back("embedding of X is not distance-preserving");
  rep.embed_y_isometric = detail::embeds_exactly(Y, z, r.embed_y);
  if (!rep.embed_y_isometric) rep.violations.push_back("embedding of Y is not distance-preserving");

  std::vector<bool> hit(static_cast<std::size_t>(r.Z.size()), false);
  bool in_range = true;
  for (const auto* map : {&r.embed_x, &r.embed_y})
    for (Index v : *map) {
      if (v < 0 || v >= r.Z.size()) in_range = false;
      else hit[v] = true;
    }
  rep.images_cover_z = in_range && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  if (!rep.images_cover_z) rep.violations.push_back("Z has points outside both images");

  if (in_range && !r.embed_x.empty() && !r.embed_y.empty()) {
    rep.recomputed_hausdorff = hausdorff(r.Z, Subset(r.Z.size(), r.embed_x), Subset(r.Z.size(), r.embed_y));
    rep.hausdorff_matches = rep.recomputed_hausdorff == r.achieved;
  }
  if (!rep.hausdorff_matches) rep.violations.push_back("recorded Hausdorff distance does not match the images");

  const auto gh = gh_exact(X, Y, options);
  rep.gh_exact = gh.exact;
  rep.recomputed_gh = gh.value;
  rep.gh_matches = gh.exact && std::abs(gh.value - r.achieved) <= tol;
  if (!gh.exact) rep.violations.push_back("GH distance could not be certified within budget");
  else if (!rep.gh_matches) rep.violations.push_back("achieved distance differs from the GH distance");
  return rep;
}

}  // namespace ghd
